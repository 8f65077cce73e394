"""High-precision evaluation of the four integral families.

The engine is tanh-sinh (double-exponential) quadrature on (0, 1).  Nodes are
stored as (x, 1-x, weight) triples so integrands with algebraic endpoint
singularities never lose digits to cancellation near x = 1; integrand
callables therefore take both x and 1-x.

Multidimensional integrals are evaluated two ways:

* `family_integral` collapses the inner dimensions in closed form (the inner
  integrals of every family are Euler integrals, i.e. Gauss hypergeometric
  kernels) and runs tanh-sinh on the remaining single dimension.  This is the
  production path; it is what makes 60-240 digit values of the 2-D and 3-D
  families affordable.
* `family_integral_iterated` is the literal iterated tensor-product rule,
  kept as an independent cross-check of the closed-form reductions.
"""

import math
import threading
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf
from .substrate import GUARD_DIGITS, PreciseReal, mpf_from_rational, rational, rational_str


class ConvergenceError(ArithmeticError):
    """Tanh-sinh levels exhausted before the tolerance was met; carries the
    best estimate seen."""

    def __init__(self, message, best=None, error_estimate=None, levels_used=None):
        super().__init__(message)
        self.best = best
        self.error_estimate = error_estimate
        self.levels_used = levels_used


class DomainError(ValueError):
    """Parameter set makes the integrand non-integrable."""


@dataclass(frozen=True)
class QuadratureResult:
    value: PreciseReal
    error_estimate: PreciseReal  # absolute
    levels_used: int


# ---------------------------------------------------------------------------
# tanh-sinh nodes
# ---------------------------------------------------------------------------
#
# Level 0 holds every node at step h = 1; level m >= 1 holds the nodes at
# odd multiples of h = 2^-m.  The union over levels 0..m is the full rule at
# step 2^-m, so refinement only ever evaluates new nodes.  Keyed by working
# precision; weights exclude the step factor h.

_node_cache = {}
_node_lock = threading.Lock()

# Nodes run until 1-x < 10^-(_SINGULARITY_HEADROOM * dps), so integrands as
# singular as u^(-1 + 1/_SINGULARITY_HEADROOM) at either endpoint still get
# full-precision tails.
_SINGULARITY_HEADROOM = 8


def _level_nodes(work_dps, level):
    key = (work_dps, level)
    cached = _node_cache.get(key)
    if cached is not None:
        return cached
    with _node_lock:
        cached = _node_cache.get(key)
        if cached is not None:
            return cached
        with mp.workdps(work_dps + 10):
            h = mpf(2) ** (-level)
            pi_half = mp.pi / 2
            q_floor = mpf(10) ** (-(_SINGULARITY_HEADROOM * work_dps + 20))
            pairs = []
            j = 1
            step = 1 if level == 0 else 2
            while True:
                t = j * h
                g = pi_half * mp.sinh(t)
                q = mp.exp(-2 * g)
                if q < q_floor:
                    break
                one_plus = 1 + q
                x = 1 / one_plus
                cx = q / one_plus
                w = pi_half * mp.cosh(t) * 2 * q / (one_plus * one_plus)
                pairs.append((x, cx, w))
                j += step
        _node_cache[key] = pairs
        return pairs


def tanh_sinh_1d(integrand, precision, min_level=4, max_level=None):
    """Integrate f over (0,1) to `precision` significant digits.

    `integrand` is called as f(x, one_minus_x) and must be finite on the open
    interval; algebraic endpoint singularities of exponent > -1 (and log
    singularities) are fine.  Levels double the node count until successive
    estimates agree below 10^-precision relative to the result; failure
    raises ConvergenceError carrying the best estimate.
    """
    work = precision + GUARD_DIGITS
    if max_level is None:
        max_level = max(12, int(math.log2(work)) + 6)
    with mp.workdps(work):
        tol = mpf(10) ** (-(precision + 2))
        acc = mp.pi / 4 * integrand(mpf(1) / 2, mpf(1) / 2)
        for level in range(0, min_level + 1):
            for x, cx, w in _level_nodes(work, level):
                acc += w * (integrand(x, cx) + integrand(cx, x))
        h = mpf(2) ** (-min_level)
        prev = acc * h
        prev_diff = None
        for level in range(min_level + 1, max_level + 1):
            for x, cx, w in _level_nodes(work, level):
                acc += w * (integrand(x, cx) + integrand(cx, x))
            h = h / 2
            total = acc * h
            diff = abs(total - prev)
            scale = max(abs(total), mpf(10) ** (-work))
            if diff == 0:
                err = mpf(0)
            elif prev_diff is not None and prev_diff > diff:
                # quadratic convergence model: next difference ~ diff^2/prev
                err = min(diff, diff * diff / prev_diff)
            else:
                err = diff
            if err <= tol * scale:
                with mp.workdps(precision):
                    return QuadratureResult(
                        PreciseReal(+total, precision),
                        PreciseReal(+err, precision),
                        level,
                    )
            prev, prev_diff = total, diff
        raise ConvergenceError(
            "tanh-sinh did not reach %d digits by level %d" % (precision, max_level),
            best=prev, error_estimate=prev_diff, levels_used=max_level,
        )


def _all_nodes(work_dps, level):
    """Every (x, 1-x, w) node of the combined rule at step 2^-level,
    including the center, weights carrying the step factor."""
    with mp.workdps(work_dps + 10):
        h = mpf(2) ** (-level)
        nodes = [(mpf(1) / 2, mpf(1) / 2, mp.pi / 4 * h)]
        for lv in range(0, level + 1):
            for x, cx, w in _level_nodes(work_dps, lv):
                nodes.append((x, cx, w * h))
                nodes.append((cx, x, w * h))
        return nodes


def tanh_sinh_nd(integrand, dim, precision, level=None):
    """Iterated tensor-product tanh-sinh over the unit cube.

    `integrand` takes 2*dim arguments: x1, 1-x1, x2, 1-x2, ...  The rule is
    the fixed-level tensor product (each axis the same 1-D rule); the error
    estimate compares against the rule one level coarser.  Cost grows like
    nodes^dim, so this is a cross-check tool at modest precision, not the
    production path.
    """
    if dim < 1 or dim > 3:
        raise ValueError("tanh_sinh_nd supports dimensions 1..3")
    work = precision + GUARD_DIGITS
    if level is None:
        level = 4 if dim == 3 else 6
    if dim == 1:
        return tanh_sinh_1d(integrand, precision)

    def tensor_total(lv):
        nodes = _all_nodes(work, lv)
        with mp.workdps(work):
            if dim == 2:
                total = mpf(0)
                for x, cx, wx in nodes:
                    inner = mpf(0)
                    for y, cy, wy in nodes:
                        inner += wy * integrand(x, cx, y, cy)
                    total += wx * inner
                return total
            total = mpf(0)
            for x, cx, wx in nodes:
                mid = mpf(0)
                for y, cy, wy in nodes:
                    inner = mpf(0)
                    for z, cz, wz in nodes:
                        inner += wz * integrand(x, cx, y, cy, z, cz)
                    mid += wy * inner
                total += wx * mid
            return total

    with mp.workdps(work):
        coarse = tensor_total(level - 1)
        fine = tensor_total(level)
        err = abs(fine - coarse)
    with mp.workdps(precision):
        return QuadratureResult(PreciseReal(+fine, precision),
                                PreciseReal(+err, precision), level)


# ---------------------------------------------------------------------------
# integral families
# ---------------------------------------------------------------------------

KINDS = ("Log1", "LogRatio", "Zeta2", "Zeta3K")

_PARAM_COUNT = {"Log1": 3, "LogRatio": 4, "Zeta2": 4, "Zeta3K": 5}


@dataclass(frozen=True)
class IntegralFamily:
    """One of the four parameterized families, with exact rational params.

    Log1(a, b, c):    B(1+a,1+b)^-1 * int x^(a+n) (1-x)^(b+n) / (1+cx)^(n+1)
    LogRatio(a,b,c,d): ratio of the (d+1)-power integral at index n to the
                       d-power integral at index 0
    Zeta2(a1,a2,b1,b2): Beta-normalized double integral over 1-xy
    Zeta3K(a,b,c,d,e): triple-integral ratio; exponent pattern
                       x^b (1-x)^c y^e (1-y)^a z^a (1-z)^c over 1-z+xyz,
                       numerator power d+1+n, denominator power d at index 0
    """

    kind: str
    params: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError("unknown family kind %r" % (self.kind,))
        params = tuple(rational(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if len(params) != _PARAM_COUNT[self.kind]:
            raise DomainError("%s takes %d parameters" % (self.kind, _PARAM_COUNT[self.kind]))
        self._validate()

    def _validate(self):
        p = self.params
        if self.kind == "Log1":
            a, b, c = p
            if a <= -1 or b <= -1:
                raise DomainError("Log1 needs a, b > -1")
            if c <= -1:
                raise DomainError("Log1 needs c > -1 so 1+cx stays positive on (0,1)")
        elif self.kind == "LogRatio":
            a, b, c, d = p
            if a <= -1 or b <= -1:
                raise DomainError("LogRatio needs a, b > -1")
            if c <= -1:
                raise DomainError("LogRatio needs c > -1")
        elif self.kind == "Zeta2":
            a1, a2, b1, b2 = p
            if not all(v < 1 for v in (a1, a2, b1, b2)):
                raise DomainError("Zeta2 exponents -a must stay > -1 (each parameter < 1)")
            if a2 + b2 >= 1:
                raise DomainError("Zeta2 corner x=y=1 diverges unless a2 + b2 < 1")
        elif self.kind == "Zeta3K":
            a, b, c, d, e = p
            if not all(v > -1 for v in (a, b, c, e)):
                raise DomainError("Zeta3K needs a, b, c, e > -1")
            # numerator at n=0 near the edges z=1 & x=0 / z=1 & y=0 and the
            # vertex where all three meet
            if b + c + 1 <= d or e + c + 1 <= d or b + c + e + 2 <= d:
                raise DomainError("Zeta3K numerator diverges at n=0 for these parameters")

    @classmethod
    def log1(cls, a, b, c):
        return cls("Log1", (a, b, c))

    @classmethod
    def log_ratio(cls, a, b, c, d):
        return cls("LogRatio", (a, b, c, d))

    @classmethod
    def zeta2(cls, a1, a2, b1, b2):
        return cls("Zeta2", (a1, a2, b1, b2))

    @classmethod
    def zeta3k(cls, a, b, c, d, e):
        return cls("Zeta3K", (a, b, c, d, e))

    def param_key(self):
        return ",".join(rational_str(p) for p in self.params)

    def label(self):
        return "%s(%s)" % (self.kind, self.param_key())

    def to_json(self):
        return {"kind": self.kind, "params": [rational_str(p) for p in self.params]}

    @staticmethod
    def from_json(d):
        return IntegralFamily(d["kind"], tuple(rational(p) for p in d["params"]))

    def symmetries(self):
        """Parameter tuples provably giving the same constant (used by the
        search driver to enumerate each constant once)."""
        if self.kind == "Zeta2":
            a1, a2, b1, b2 = self.params
            return {self.param_key(),
                    IntegralFamily.zeta2(b1, b2, a1, a2).param_key()}
        return {self.param_key()}


# denominator integrals of the ratio families, cached per (family, precision)
_den_cache = {}
_den_lock = threading.Lock()


def _beta(a, b):
    return mpmath.beta(a, b)


class GaussKernel:
    """2F1(a, b; c; z) evaluated stably on (0,1) given both z and 1-z.

    Direct summation loses every digit once z is within an ulp of 1, which is
    exactly where tanh-sinh clusters its nodes, so for 1-z below a threshold
    we switch to the z -> 1-z connection formula written in u = 1-z.  The
    integer c-a-b cases carry the usual log(u) and digamma corrections.
    Everything is computed at the ambient mpmath working precision.
    """

    _NEAR_ONE = 0.35

    def __init__(self, a, b, c):
        self.a, self.b, self.c = a, b, c = mpf(a), mpf(b), mpf(c)
        eps = mpf(10) ** (-(mp.dps - 5))
        self.terminating = any(
            v <= 0 and abs(v - mpmath.nint(v)) < eps for v in (a, b))
        m = c - a - b
        m_int = mpmath.nint(m)
        self.is_int = abs(m - m_int) < eps
        self.m = int(m_int) if self.is_int else None
        self._flip = None
        if self.terminating:
            # finite polynomial in z: direct evaluation is stable everywhere
            return
        if self.is_int and self.m < 0:
            # Euler transform F(a,b;c;z) = u^(c-a-b) F(c-a, c-b; c; z) turns
            # the exponent nonnegative
            self._flip = GaussKernel(c - a, c - b, c)
            return
        if not self.is_int:
            self.p1 = mp.gamma(c) * mp.gamma(m) / (mp.gamma(c - a) * mp.gamma(c - b))
            self.p2 = mp.gamma(c) * mp.gamma(-m) / (mp.gamma(a) * mp.gamma(b))
        elif self.m == 0:
            self.front = mp.gamma(c) / (mp.gamma(a) * mp.gamma(b))
        else:  # m >= 1
            self.front_fin = (mp.gamma(self.m) * mp.gamma(c)
                              / (mp.gamma(a + self.m) * mp.gamma(b + self.m)))
            self.front_log = mp.gamma(c) / (mp.gamma(a) * mp.gamma(b))

    def _series_safe_below(self):
        # u-side series terms decay monotonically once (a+k)(b+k)u/(k+1)(..)
        # starts below ~1/2; beyond that they grow first and cancel later,
        # burning digits for large parameters
        return min(mpf("0.25"), 1 / (4 * (1 + abs(self.a)) * (1 + abs(self.b))))

    def at(self, z, cz):
        if self.terminating:
            return mpmath.hyp2f1(self.a, self.b, self.c, z)
        if cz >= self._NEAR_ONE:
            return mpmath.hyp2f1(self.a, self.b, self.c, z)
        if cz >= self._series_safe_below():
            # middle band: let mpmath's adaptive machinery absorb the
            # transformation cancellation, at enough digits to represent 1-u
            extra = int(-mp.log10(cz)) + 20
            with mp.extradps(extra):
                zz = 1 - mpf(cz)
                val = mpmath.hyp2f1(self.a, self.b, self.c, zz)
            return +val
        if self._flip is not None:
            return cz ** (self.c - self.a - self.b) * self._flip.at(z, cz)
        if not self.is_int:
            u = cz
            m = self.c - self.a - self.b
            s1 = mpmath.hyp2f1(self.a, self.b, self.a + self.b - self.c + 1, u)
            s2 = mpmath.hyp2f1(self.c - self.a, self.c - self.b, 1 - (self.a + self.b - self.c), u)
            return self.p1 * s1 + self.p2 * u ** m * s2
        return self._log_branch(cz)

    def _log_branch(self, u):
        # c = a + b + m with m >= 0: series in u with log(u) terms
        a, b, m = self.a, self.b, self.m
        logu = mp.log(u)
        tol = mpf(10) ** (-(mp.dps + 5))
        if m == 0:
            # F = G(c)/(G(a)G(b)) sum t_k [2psi(k+1)-psi(a+k)-psi(b+k)-log u] u^k,
            # t_k = (a)_k (b)_k / (k!)^2
            t = mpf(1)
            psi1 = -mp.euler
            psia = mpmath.digamma(a)
            psib = mpmath.digamma(b)
            acc = mpf(0)
            upow = mpf(1)
            k = 0
            while True:
                term = t * upow * (2 * psi1 - psia - psib - logu)
                acc += term
                if abs(term) < tol * max(abs(acc), mpf(1)) and k > 2:
                    break
                t = t * (a + k) * (b + k) / ((k + 1) * (k + 1))
                psi1 += mpf(1) / (k + 1)
                psia += 1 / (a + k)
                psib += 1 / (b + k)
                upow *= u
                k += 1
                if k > 40 * mp.dps:
                    raise ConvergenceError("2F1 log-branch series stalled")
            return self.front * acc
        # m >= 1 (Abramowitz-Stegun 15.3.11)
        fin = mpf(0)
        t = mpf(1)
        for k in range(m):
            fin += t
            if k < m - 1:
                t = t * (a + k) * (b + k) / ((k + 1) * (1 - m + k)) * u
        acc = mpf(0)
        t = mpf(1) / mp.factorial(m)
        psi1 = -mp.euler
        psim = mpmath.digamma(mpf(m + 1))
        psia = mpmath.digamma(a + m)
        psib = mpmath.digamma(b + m)
        upow = mpf(1)
        k = 0
        while True:
            term = t * upow * (logu - psi1 - psim + psia + psib)
            acc += term
            if abs(term) < tol * max(abs(acc), mpf(1)) and k > 2:
                break
            t = t * (a + m + k) * (b + m + k) / ((k + 1) * (k + 1 + m))
            psi1 += mpf(1) / (k + 1)
            psim += mpf(1) / (k + 1 + m)
            psia += 1 / (a + m + k)
            psib += 1 / (b + m + k)
            upow *= u
            k += 1
            if k > 40 * mp.dps:
                raise ConvergenceError("2F1 log-branch series stalled")
        sign = mpf(-1) ** m
        return self.front_fin * fin - sign * self.front_log * u ** m * acc


def _log1_value(params, n, precision):
    a, b, c = params
    work = precision + GUARD_DIGITS
    with mp.workdps(work):
        av, bv, cv = (mpf_from_rational(v) for v in (a, b, c))
        norm = _beta(1 + av, 1 + bv)

        def f(x, cx):
            return x ** (av + n) * cx ** (bv + n) / (1 + cv * x) ** (n + 1)

        res = tanh_sinh_1d(f, precision)
        with mp.workdps(precision):
            return QuadratureResult(
                PreciseReal(+(res.value.value / norm), precision),
                res.error_estimate, res.levels_used)


def _log_ratio_den(params, precision):
    a, b, c, d = params
    key = ("LogRatio", params, precision)
    with _den_lock:
        if key in _den_cache:
            return _den_cache[key]
    work = precision + GUARD_DIGITS
    with mp.workdps(work):
        av, bv, cv, dv = (mpf_from_rational(v) for v in (a, b, c, d))

        def f(x, cx):
            return x ** av * cx ** bv / (1 + cv * x) ** dv

        den = tanh_sinh_1d(f, precision).value.value
    with _den_lock:
        _den_cache[key] = den
    return den


def _log_ratio_value(params, n, precision):
    a, b, c, d = params
    work = precision + GUARD_DIGITS
    den = _log_ratio_den(params, precision)
    with mp.workdps(work):
        av, bv, cv, dv = (mpf_from_rational(v) for v in (a, b, c, d))

        def f(x, cx):
            return x ** (av + n) * cx ** (bv + n) / (1 + cv * x) ** (dv + 1 + n)

        res = tanh_sinh_1d(f, precision)
        with mp.workdps(precision):
            return QuadratureResult(
                PreciseReal(+(res.value.value / den), precision),
                res.error_estimate, res.levels_used)


def _zeta2_value(params, n, precision):
    # inner x-integral is Euler's: int x^(n-a1) (1-x)^(n-a2) (1-xy)^-(n+1) dx
    #   = B(n+1-a1, n+1-a2) * 2F1(n+1, n+1-a1; 2n+2-a1-a2; y)
    a1, a2, b1, b2 = params
    work = precision + GUARD_DIGITS
    with mp.workdps(work):
        a1v, a2v, b1v, b2v = (mpf_from_rational(v) for v in (a1, a2, b1, b2))
        norm = (_beta(n + 1 - a1v, n + 1 - a2v)
                / (_beta(1 - a1v, 1 - a2v) * _beta(1 - b1v, 1 - b2v)))
        kernel = GaussKernel(n + 1, n + 1 - a1v, 2 * n + 2 - a1v - a2v)

        def f(y, cy):
            return y ** (n - b1v) * cy ** (n - b2v) * kernel.at(y, cy)

        res = tanh_sinh_1d(f, precision)
        with mp.workdps(precision):
            return QuadratureResult(
                PreciseReal(+(res.value.value * norm), precision),
                res.error_estimate, res.levels_used)


def _zeta3k_j3(params, power_base, n, precision):
    """J3 integral for the Zeta3K exponent pattern, denominator power
    power_base + n, reduced to one dimension.

    The z-integral is Euler's (2F1 of 1-xy); the remaining x,y integral
    couples only through w = xy, and its fiber integral is again Euler's.
    """
    a, b, c, d, e = params
    work = precision + GUARD_DIGITS
    with mp.workdps(work):
        av, bv, cv, ev = (mpf_from_rational(v) for v in (a, b, c, e))
        s = mpf_from_rational(power_base) + n
        pre = _beta(av + n + 1, cv + n + 1) * _beta(cv + n + 1, av + n + 1)
        c1v = mpf_from_rational(a + c + 2 * n + 2)
        k_z = GaussKernel(s, av + n + 1, c1v)
        k_xy = GaussKernel(av + ev - bv + n + 1, cv + n + 1, c1v)

        def f(w, cw):
            # both Gauss kernels take argument u = 1 - w
            return (w ** (ev + n) * cw ** (av + cv + 2 * n + 1)
                    * k_z.at(cw, w) * k_xy.at(cw, w))

        res = tanh_sinh_1d(f, precision)
        return res.value.value * pre, res


def _zeta3k_den(params, precision):
    key = ("Zeta3K", params, precision)
    with _den_lock:
        if key in _den_cache:
            return _den_cache[key]
    d = params[3]
    val, _ = _zeta3k_j3(params, d, 0, precision)
    with _den_lock:
        _den_cache[key] = val
    return val


def _zeta3k_value(params, n, precision):
    d = params[3]
    den = _zeta3k_den(params, precision)
    num, res = _zeta3k_j3(params, d + 1, n, precision)
    work = precision + GUARD_DIGITS
    with mp.workdps(work):
        val = num / den
    with mp.workdps(precision):
        return QuadratureResult(PreciseReal(+val, precision),
                                res.error_estimate, res.levels_used)


_VALUE_FUNCS = {
    "Log1": _log1_value,
    "LogRatio": _log_ratio_value,
    "Zeta2": _zeta2_value,
    "Zeta3K": _zeta3k_value,
}


def family_integral(family, n, precision):
    """I(n) for the family, to `precision` digits."""
    if n < 0:
        raise ValueError("index n must be >= 0")
    return _VALUE_FUNCS[family.kind](family.params, n, precision)


def family_values(family, count, precision):
    """[I(0), ..., I(count-1)] at `precision` digits."""
    return [family_integral(family, n, precision) for n in range(count)]


# ---------------------------------------------------------------------------
# literal iterated evaluation (cross-check path)
# ---------------------------------------------------------------------------

def family_integral_iterated(family, n, precision):
    """I(n) by iterated tensor-product tanh-sinh on the raw integrand.

    Independent of the closed-form inner reductions in family_integral;
    intended for validation at modest precision (cost is nodes^dim).
    """
    params = family.params
    work = precision + GUARD_DIGITS
    if family.kind == "Log1":
        return _log1_value(params, n, precision)
    if family.kind == "LogRatio":
        return _log_ratio_value(params, n, precision)
    if family.kind == "Zeta2":
        a1, a2, b1, b2 = params
        with mp.workdps(work):
            a1v, a2v, b1v, b2v = (mpf_from_rational(v) for v in params)
            norm = 1 / (_beta(1 - a1v, 1 - a2v) * _beta(1 - b1v, 1 - b2v))

            def f(x, cx, y, cy):
                one_minus_xy = cx + cy - cx * cy
                return (x ** (n - a1v) * cx ** (n - a2v)
                        * y ** (n - b1v) * cy ** (n - b2v)
                        / one_minus_xy ** (n + 1))

            res = tanh_sinh_nd(f, 2, precision)
            with mp.workdps(precision):
                return QuadratureResult(
                    PreciseReal(+(res.value.value * norm), precision),
                    res.error_estimate, res.levels_used)
    if family.kind == "Zeta3K":
        a, b, c, d, e = params

        def j3_raw(power, idx):
            with mp.workdps(work):
                av, bv, cv, ev = (mpf_from_rational(v) for v in (a, b, c, e))
                pw = mpf_from_rational(power) + idx

                def f(x, cx, y, cy, z, cz):
                    one_minus_xy = cx + cy - cx * cy
                    kern = x * y + one_minus_xy * cz  # = 1 - z + xyz, stably
                    return (x ** (bv + idx) * cx ** (cv + idx)
                            * y ** (ev + idx) * cy ** (av + idx)
                            * z ** (av + idx) * cz ** (cv + idx)
                            / kern ** pw)

                return tanh_sinh_nd(f, 3, precision)

        den = j3_raw(d, 0)
        num = j3_raw(d + 1, n)
        with mp.workdps(work):
            val = num.value.value / den.value.value
        with mp.workdps(precision):
            return QuadratureResult(PreciseReal(+val, precision),
                                    num.error_estimate, num.levels_used)
    raise DomainError("unknown family kind %r" % (family.kind,))
