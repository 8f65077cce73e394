"""Arithmetic foundation: exact rationals, precision-tagged reals, digamma,
prime sieve and lcm(1..n).

All values here are immutable after construction and safe to share across
threads; the sieve keeps a lock-guarded extendable cache.
"""

import math
import threading
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf
from gmpy2 import mpq, mpz

# Digits of headroom every numeric pipeline carries beyond its target
# precision; results are rounded back to the target on the way out.
GUARD_DIGITS = 15


def rational(x, y=None):
    """Exact rational from int/str/Fraction/mpq (and optional denominator)."""
    if y is not None:
        return mpq(x, y)
    if isinstance(x, str):
        return mpq(x)
    if hasattr(x, "numerator"):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def rational_str(q):
    """Canonical "p/q" form (plain integer string when q == 1)."""
    q = rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%s/%s" % (q.numerator, q.denominator)


def mpf_from_rational(q, dps=None):
    q = rational(q)
    if dps is not None:
        with mp.workdps(dps):
            return mpf(q.numerator) / mpf(q.denominator)
    return mpf(q.numerator) / mpf(q.denominator)


def log_of_integer(n):
    """float log of an arbitrarily large positive integer."""
    n = mpz(n)
    if n <= 0:
        raise ValueError("log_of_integer needs a positive integer")
    bl = n.bit_length()
    if bl <= 512:
        return math.log(int(n))
    top = int(n >> (bl - 64))
    return math.log(top) + (bl - 64) * math.log(2)


def log_of_rational(q):
    q = rational(q)
    if q <= 0:
        raise ValueError("log_of_rational needs a positive rational")
    return log_of_integer(q.numerator) - log_of_integer(q.denominator)


@dataclass(frozen=True)
class PreciseReal:
    """A real number together with the decimal precision it is good to.

    Arithmetic between two PreciseReals is done at the minimum of their
    precisions (see add/mul below); the precision tag is always explicit.
    """

    value: mpf
    precision: int

    def __post_init__(self):
        if self.precision < 1:
            raise ValueError("precision must be a positive digit count")

    def to_json(self):
        with mp.workdps(self.precision):
            return {"value": mpmath.nstr(self.value, self.precision),
                    "precision": self.precision}

    @staticmethod
    def from_json(d):
        prec = int(d["precision"])
        with mp.workdps(prec + GUARD_DIGITS):
            return PreciseReal(mpf(d["value"]), prec)

    def at_precision(self, precision):
        with mp.workdps(precision):
            return PreciseReal(+self.value, precision)

    def __float__(self):
        return float(self.value)


def real_add(x, y):
    prec = min(x.precision, y.precision)
    with mp.workdps(prec + GUARD_DIGITS):
        return PreciseReal(x.value + y.value, prec)


def real_mul(x, y):
    prec = min(x.precision, y.precision)
    with mp.workdps(prec + GUARD_DIGITS):
        return PreciseReal(x.value * y.value, prec)


# ---------------------------------------------------------------------------
# digamma
# ---------------------------------------------------------------------------

_bernoulli_cache = [mpq(1)]
_bernoulli_lock = threading.Lock()


def _bernoulli(m):
    """Exact Bernoulli number B_m (B_1 = -1/2 convention)."""
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= m:
            k = len(_bernoulli_cache)
            # B_k = -1/(k+1) * sum_{j<k} C(k+1, j) B_j
            acc = mpq(0)
            binom = mpz(1)  # C(k+1, 0)
            for j in range(k):
                acc += binom * _bernoulli_cache[j]
                binom = binom * (k + 1 - j) // (j + 1)
            _bernoulli_cache.append(-acc / (k + 1))
        return _bernoulli_cache[m]


def digamma(x, precision):
    """Psi(x) = Gamma'(x)/Gamma(x) for rational x > 0, to `precision` digits.

    Recurrence-shifts the argument until the Bernoulli asymptotic series
    converges below the target, then sums it.  The shift target grows with
    the precision (the series stalls near 10^-(2*pi*x/ln10) digits, so a
    fixed shift cannot serve high precisions).
    """
    x = rational(x)
    if x <= 0:
        raise ValueError("digamma pole or domain error: x must be > 0")
    if precision < 10:
        raise ValueError("precision must be at least 10 digits")
    work = precision + GUARD_DIGITS
    with mp.workdps(work):
        # asymptotic error ~ (2k)! / (2 pi x)^(2k): usable once x ~ 0.4*work
        shift_to = max(10, int(0.4 * work) + 2)
        acc = mpf(0)
        xv = x
        while xv < shift_to:
            acc -= mpf_from_rational(1 / xv)
            xv += 1
        t = mpf_from_rational(xv)
        # psi(t) ~ log t - 1/(2t) - sum_{k>=1} B_2k / (2k t^2k)
        res = mp.log(t) - 1 / (2 * t) + acc
        t2 = t * t
        power = t2
        tol = mpf(10) ** (-work)
        k = 1
        while True:
            term = mpf_from_rational(_bernoulli(2 * k) / (2 * k)) / power
            res -= term
            if abs(term) < tol:
                break
            power *= t2
            k += 1
            if k > 4 * work:
                raise RuntimeError("digamma series failed to converge")
    with mp.workdps(precision):
        return PreciseReal(+res, precision)


# ---------------------------------------------------------------------------
# primes and lcm
# ---------------------------------------------------------------------------

class _Sieve:
    """Cached sieve of Eratosthenes; extension is lock-guarded, reads are
    safe concurrently once the cache covers the query."""

    def __init__(self):
        self._lock = threading.Lock()
        self._limit = 0
        self._primes = []

    def _extend(self, limit):
        with self._lock:
            if limit <= self._limit:
                return
            limit = max(limit, 2 * self._limit, 1 << 16)
            flags = bytearray([1]) * (limit + 1)
            flags[0:2] = b"\x00\x00"
            for p in range(2, int(limit ** 0.5) + 1):
                if flags[p]:
                    flags[p * p:limit + 1:p] = bytearray(len(range(p * p, limit + 1, p)))
            self._primes = [i for i in range(limit + 1) if flags[i]]
            self._limit = limit

    def primes_up_to(self, n):
        if n > self._limit:
            self._extend(n)
        primes = self._primes
        # bisect for the prefix <= n
        lo, hi = 0, len(primes)
        while lo < hi:
            mid = (lo + hi) // 2
            if primes[mid] <= n:
                lo = mid + 1
            else:
                hi = mid
        return primes[:lo]

    def segment(self, lo, hi):
        """Primes p with lo < p <= hi, by segmented sieve over (lo, hi]."""
        if hi <= lo or hi < 2:
            return []
        if hi <= self._limit:
            return [p for p in self.primes_up_to(hi) if p > lo]
        if hi <= 1 << 22:
            return [p for p in self.primes_up_to(hi) if p > lo]
        base = self.primes_up_to(int(hi ** 0.5) + 1)
        start = max(lo + 1, 2)
        flags = bytearray([1]) * (hi - start + 1)
        for p in base:
            first = max(p * p, ((start + p - 1) // p) * p)
            if first > hi:
                continue
            flags[first - start::p] = bytearray(len(range(first, hi + 1, p)))
        return [start + i for i, f in enumerate(flags) if f]


_sieve = _Sieve()


def primes_in(lo, hi):
    """Ascending primes p with lo < p <= hi."""
    if not (0 <= lo <= hi):
        raise ValueError("need 0 <= lo <= hi")
    return _sieve.segment(lo, hi)


def primes_up_to(n):
    return _sieve.primes_up_to(n)


def lcm_range(n):
    """lcm(1, 2, ..., n)."""
    if n < 1:
        raise ValueError("lcm_range needs n >= 1")
    acc = mpz(1)
    for p in primes_up_to(n):
        pk = p
        while pk * p <= n:
            pk *= p
        acc *= pk
    return acc


def _prime_power_base(m, prime_set):
    """Return p if m = p^k for a prime p, else None."""
    if m in prime_set:
        return m
    for q in primes_up_to(int(m ** 0.5) + 1):
        if m % q == 0:
            while m % q == 0:
                m //= q
            return q if m == 1 else None
    return None


def lcm_range_list(n):
    """[lcm(1..0)=1, lcm(1..1), ..., lcm(1..n)] as a list of mpz.

    lcm(1..m) / lcm(1..m-1) is p exactly when m is a power of the prime p.
    """
    out = [mpz(1)] * (n + 1)
    acc = mpz(1)
    prime_set = set(primes_up_to(n)) if n >= 2 else set()
    for m in range(2, n + 1):
        p = _prime_power_base(m, prime_set)
        if p is not None:
            acc *= p
        out[m] = mpz(acc)
    return out
