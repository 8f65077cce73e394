"""irrcert: manufacture irrationality-proof certificates for constants given
by parameterized unit-cube integrals.

Pipeline: high-precision quadrature of the integral family, discovery of the
second-order recurrence its index sequence satisfies, exact rational
approximant sequences, conjectured integer-ating factors, and the resulting
delta / irrationality measure.
"""

from .substrate import (
    GUARD_DIGITS,
    PreciseReal,
    digamma,
    lcm_range,
    primes_in,
    rational,
    rational_str,
)
from .quadrature import IntegralFamily, QuadratureResult, family_integral, tanh_sinh_1d
from .holonomic import (
    ApproxSequences,
    PolyRecurrence,
    char_growth,
    find_initial_relation,
    guess_recurrence,
    iterate,
)
from .lattice import (
    Identification,
    IntegerRelation,
    equivalent_constants,
    identify_constant,
    integer_relation,
    lll_reduce,
)
from .certificate import (
    IntegeratingConjecture,
    IrrationalityCertificate,
    PipelineError,
    PpSpec,
    build_certificate,
    conjecture_integerating,
    delta_and_measure,
    empirical_delta,
    min_clearing_factor,
    pp_growth_exact,
    pp_product,
)

__version__ = "0.1.0"
