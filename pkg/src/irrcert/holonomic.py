"""P-recursive sequences: exact iteration of integer-polynomial recurrences,
recurrence guessing from high-precision values, characteristic-root growth
rates, and the initial rational relation tying I(0) to I(1).

Growth statements use the convention lim log|x_n| / n = log(alpha): the rate
is always reported as alpha itself, with logs taken explicitly where needed.
"""

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf
from gmpy2 import gcd, mpq, mpz

from .substrate import GUARD_DIGITS, PreciseReal, rational_str
from .lattice import lll_reduce, _relation_candidates, _as_precise, PrecisionError


class SingularRecurrenceError(ArithmeticError):
    """Leading coefficient vanished inside the iteration range."""

    def __init__(self, index):
        super().__init__("leading coefficient vanishes at n = %d" % index)
        self.index = index


class DegenerateAsymptoticsError(ArithmeticError):
    """Characteristic roots with equal moduli: Poincare-Perron inapplicable."""


def _poly_eval(coeffs, n):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


def _poly_degree(coeffs):
    for i in range(len(coeffs) - 1, -1, -1):
        if coeffs[i]:
            return i
    return -1


def _poly_str(coeffs, var="n"):
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        if i == 0:
            terms.append("%d" % c)
        elif i == 1:
            terms.append("%d*%s" % (c, var))
        else:
            terms.append("%d*%s^%d" % (c, var, i))
    return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class PolyRecurrence:
    """sum_j p_j(n) * x_(n+j) = 0 with integer polynomial coefficients.

    coeffs holds (p_0, ..., p_L), each polynomial low-to-high degree.
    Normalized: overall content 1, leading coefficient of p_L positive.
    """

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(tuple(int(c) for c in p) for p in self.coeffs)
        if len(coeffs) < 2:
            raise ValueError("recurrence needs order >= 1")
        if _poly_degree(coeffs[-1]) < 0:
            raise ValueError("leading polynomial p_L is identically zero")
        g = mpz(0)
        for p in coeffs:
            for c in p:
                g = gcd(g, mpz(c))
        if g > 1:
            coeffs = tuple(tuple(int(mpz(c) // g) for c in p) for p in coeffs)
        lead = coeffs[-1][_poly_degree(coeffs[-1])]
        if lead < 0:
            coeffs = tuple(tuple(-c for c in p) for p in coeffs)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def degree(self):
        return max(_poly_degree(p) for p in self.coeffs)

    def leading_coefficients(self):
        """Coefficient of n^degree in each p_j (0 where deg p_j < degree)."""
        d = self.degree
        return tuple(p[d] if _poly_degree(p) >= d else 0 for p in self.coeffs)

    def residual(self, xs, n):
        """sum_j p_j(n) x_(n+j), exact when xs are rationals."""
        return sum(mpq(_poly_eval(p, n)) * xs[n + j] for j, p in enumerate(self.coeffs))

    def describe(self):
        parts = ["(%s)*X(n+%d)" % (_poly_str(p), j) for j, p in enumerate(self.coeffs)]
        return " + ".join(parts) + " = 0"

    def to_json(self):
        return {"order": self.order, "coeffs": [list(p) for p in self.coeffs]}

    @staticmethod
    def from_json(d):
        return PolyRecurrence(tuple(tuple(p) for p in d["coeffs"]))


def iterate(rec, init, count):
    """x_0 ... x_count satisfying the recurrence exactly, from L initial values.

    Values are exact rationals; raises SingularRecurrenceError if the leading
    polynomial vanishes at an index the iteration needs.
    """
    L = rec.order
    if len(init) != L:
        raise ValueError("need exactly %d initial values" % L)
    xs = [mpq(v) for v in init]
    for n in range(0, count - L + 1):
        lead = _poly_eval(rec.coeffs[L], n)
        if lead == 0:
            raise SingularRecurrenceError(n)
        acc = mpq(0)
        for j in range(L):
            acc += _poly_eval(rec.coeffs[j], n) * xs[n + j]
        xs.append(-acc / lead)
    return xs


# ---------------------------------------------------------------------------
# guessing
# ---------------------------------------------------------------------------

def _values_as_mpf(values, precision):
    out = []
    for v in values:
        if isinstance(v, PreciseReal):
            out.append(v.value)
        else:
            out.append(mpf(v))
    return out


def _fit_candidates(vals, L, D, precision, n_fit, top=3):
    """Short vectors of the guessing lattice for fixed (order, degree)."""
    U = (L + 1) * (D + 1)
    scale = mpf(10) ** (min(precision, 270) - 10)
    rows = [[1 if i == u else 0 for i in range(U)] for u in range(U)]
    for nn in range(n_fit):
        sigma = max(abs(vals[nn + j]) for j in range(L + 1)) * mpf(max(1, nn)) ** D
        if sigma == 0:
            continue
        for u, (j, d) in enumerate((j, d) for j in range(L + 1) for d in range(D + 1)):
            entry = scale * vals[nn + j] * mpf(nn) ** d / sigma
            rows[u].append(int(mpmath.nint(entry)))
    reduced = lll_reduce(rows)
    cands = []
    for row in reduced[:top]:
        cand = row[:U]
        if any(cand):
            cands.append(tuple(cand))
    return cands


def _candidate_recurrence(cand, L, D):
    polys = tuple(tuple(cand[j * (D + 1):(j + 1) * (D + 1)]) for j in range(L + 1))
    if _poly_degree(polys[-1]) < 0 or _poly_degree(polys[0]) < 0:
        return None  # degenerate: actually lower order
    try:
        return PolyRecurrence(polys)
    except ValueError:
        return None


def _holdout_residual(rec, vals, start, stop):
    """Worst relative residual of the recurrence over value indices
    [start, stop); each equation is scaled by its largest term."""
    worst = mpf(0)
    L = rec.order
    for nn in range(start, stop):
        if nn + L >= len(vals):
            break
        acc = mpf(0)
        scale = mpf(0)
        for j, p in enumerate(rec.coeffs):
            t = mpf(_poly_eval(p, nn)) * vals[nn + j]
            acc += t
            scale = max(scale, abs(t))
        if scale == 0:
            continue
        worst = max(worst, abs(acc) / scale)
    return worst


def guess_recurrence(values, order, max_degree, precision, holdout=10):
    """Minimal verified recurrence for the value sequence, or None.

    Searches orders 1..order and degrees 0..max_degree in increasing unknown
    count; a hit must reproduce every held-out index (the last `holdout`
    windows, never part of the fit) to a relative residual below
    10^(-precision/2).  Ties at equal unknown count go to the smaller
    coefficient height.
    """
    need = (order + 1) * (max_degree + 1) + order + holdout
    if len(values) < need:
        raise ValueError(
            "need at least %d values for order %d, degree %d (got %d)"
            % (need, order, max_degree, len(values)))
    work = precision + GUARD_DIGITS
    with mp.workdps(work):
        vals = _values_as_mpf(values, precision)
        threshold = mpf(10) ** (-(precision // 2))
        shapes = sorted(
            ((L, D) for L in range(1, order + 1) for D in range(0, max_degree + 1)),
            key=lambda s: ((s[0] + 1) * (s[1] + 1), s[0]))
        by_unknowns = {}
        for L, D in shapes:
            by_unknowns.setdefault((L + 1) * (D + 1), []).append((L, D))
        scale_digits = min(precision, 270) - 10
        for U in sorted(by_unknowns):
            hits = []
            for L, D in by_unknowns[U]:
                n_fit = min(len(vals) - L - holdout, U + 12)
                if n_fit < U:
                    continue
                for cand in _fit_candidates(vals, L, D, precision, n_fit):
                    rec = _candidate_recurrence(cand, L, D)
                    if rec is None:
                        continue
                    height = max(abs(c) for p in rec.coeffs for c in p)
                    # a lattice at scale 10^S only supports heights with
                    # U*log10(h) comfortably below S; saturating vectors are
                    # noise interpolation, however small their residual looks
                    # against their own inflated terms
                    if U * math.log10(max(int(height), 2)) > scale_digits - 12:
                        continue
                    res = _holdout_residual(rec, vals, n_fit, len(vals))
                    if res < threshold:
                        hits.append((height, rec))
            if hits:
                hits.sort(key=lambda h: h[0])
                return hits[0][1]
    return None


# ---------------------------------------------------------------------------
# characteristic growth
# ---------------------------------------------------------------------------

def char_growth(rec, precision=60):
    """(alpha, beta, roots) for an order-2 recurrence.

    alpha is the dominant characteristic-root modulus (growth of a_n, b_n);
    beta is the reciprocal of the recessive-root modulus (decay of I(n)).
    Equal moduli (including complex pairs) raise DegenerateAsymptoticsError.
    """
    if rec.order != 2:
        raise ValueError("char_growth handles order-2 recurrences")
    c0, c1, c2 = rec.leading_coefficients()
    if c2 == 0 or c0 == 0:
        raise DegenerateAsymptoticsError(
            "leading-degree coefficients vanish; limit polynomial degenerate")
    work = precision + GUARD_DIGITS
    with mp.workdps(work):
        disc = mpf(c1) ** 2 - 4 * mpf(c0) * mpf(c2)
        if disc <= 0:
            raise DegenerateAsymptoticsError(
                "complex characteristic roots: equal moduli")
        sq = mp.sqrt(disc)
        r1 = (-c1 + sq) / (2 * c2)
        r2 = (-c1 - sq) / (2 * c2)
        m1, m2 = abs(r1), abs(r2)
        big, small = max(m1, m2), min(m1, m2)
        if small == 0 or abs(big - small) <= mpf(10) ** (-(precision // 2)) * big:
            raise DegenerateAsymptoticsError("characteristic roots share a modulus")
        with mp.workdps(precision):
            return (PreciseReal(+big, precision),
                    PreciseReal(+(1 / small), precision),
                    (+r1, +r2))


# ---------------------------------------------------------------------------
# initial relation
# ---------------------------------------------------------------------------

def find_initial_relation(I0, I1, precision, height_bound=10 ** 6):
    """Smallest-height integers (c0, c1, c2), c1 != 0, c1 > 0 normalized,
    with c0*I(0) + c1*I(1) = c2 to within 10^-(precision-10); None if the
    family lacks a rational relation under the height bound.

    From it b_1 = -c0/c1 and a_1 = -c2/c1 (with a_0 = 0, b_0 = 1), so that
    I(n) = b_n*C - a_n propagates through the recurrence.
    """
    I0 = _as_precise(I0, precision)
    I1 = _as_precise(I1, precision)
    avail = min(I0.precision, I1.precision)
    if avail < precision:
        raise PrecisionError("initial relation needs %d digits" % precision)
    with mp.workdps(avail + GUARD_DIGITS):
        vals = [I0.value, I1.value, mpf(1)]
        mag = max(abs(v) for v in vals)
        tol = mpf(10) ** (-(precision - 10)) * max(mpf(1), mag)
        best = None
        for coeffs in _relation_candidates(vals, min(precision, avail - 5),
                                           height_bound, count=6):
            c0, c1, mc2 = (int(x) for x in coeffs)
            if c1 == 0:
                continue
            residual = abs(c0 * vals[0] + c1 * vals[1] + mc2)
            if residual >= tol:
                continue
            if c1 < 0:
                c0, c1, mc2 = -c0, -c1, -mc2
            height = max(abs(c0), abs(c1), abs(mc2))
            if best is None or height < best[0]:
                best = (height, (c0, c1, -mc2))
        return best[1] if best else None


@dataclass(frozen=True)
class ApproxSequences:
    """Exact rational approximant sequences with their provenance.

    a and b satisfy `recurrence` exactly with a_0 = 0, b_0 = 1 and first
    terms fixed by the initial relation c0*I(0) + c1*I(1) = c2, so that
    I(n) = b_n*C - a_n for the family constant C = I(0).
    """

    recurrence: PolyRecurrence
    a: tuple
    b: tuple
    initial_relation: tuple
    constant_value: PreciseReal

    def to_json(self):
        return {
            "recurrence": self.recurrence.to_json(),
            "initial_relation": [int(c) for c in self.initial_relation],
            "a": [rational_str(x) for x in self.a],
            "b": [rational_str(x) for x in self.b],
            "constant_value": self.constant_value.to_json(),
        }


def build_sequences(rec, relation, constant_value, terms):
    """Iterate a and b out to `terms` terms from the initial relation."""
    c0, c1, c2 = relation
    if c1 == 0:
        raise ValueError("initial relation must have c1 != 0")
    a = iterate(rec, [mpq(0), mpq(-c2, c1)], terms)
    b = iterate(rec, [mpq(1), mpq(-c0, c1)], terms)
    return ApproxSequences(rec, tuple(a), tuple(b), tuple(relation), constant_value)
