"""Integer-relation machinery: LLL reduction, relation detection with
two-precision confirmation, constant identification, and fractional-linear
equivalence of constants.

One lattice engine serves every consumer (recurrence guessing, relation
finding, identification).  All functions are pure.
"""

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf
from gmpy2 import mpq, mpz

from .substrate import GUARD_DIGITS, PreciseReal, rational, rational_str


class RankError(ValueError):
    """Input rows are linearly dependent."""


def lll_reduce(basis, delta=None):
    """LLL-reduce an integer row basis (Lovasz parameter 3/4).

    Exact arithmetic throughout: integer basis operations with rational
    Gram-Schmidt data updated incrementally.  Returns a new list of rows
    generating the same lattice, size-reduced and Lovasz-conditioned.
    """
    if delta is None:
        delta = mpq(3, 4)
    else:
        delta = rational(delta)
    b = [[mpz(x) for x in row] for row in basis]
    n = len(b)
    if n == 0:
        return []
    width = len(b[0])
    if any(len(row) != width for row in b):
        raise ValueError("ragged basis")

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    mu = [[mpq(0)] * n for _ in range(n)]
    B = [mpq(0)] * n
    star = [None] * n
    for i in range(n):
        v = [mpq(x) for x in b[i]]
        for j in range(i):
            mu[i][j] = mpq(dot(b[i], star[j])) / B[j]
            v = [x - mu[i][j] * y for x, y in zip(v, star[j])]
        star[i] = v
        B[i] = dot(v, v)
        if B[i] == 0:
            raise RankError("rows are linearly dependent")

    def size_reduce(k, j):
        q = mu[k][j]
        r = (2 * q.numerator + q.denominator) // (2 * q.denominator)
        if r:
            b[k] = [x - r * y for x, y in zip(b[k], b[j])]
            for jj in range(j):
                mu[k][jj] -= r * mu[j][jj]
            mu[k][j] -= r

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        if B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]:
            for j in range(k - 2, -1, -1):
                size_reduce(k, j)
            k += 1
        else:
            nu = mu[k][k - 1]
            Bk = B[k] + nu * nu * B[k - 1]
            mu[k][k - 1] = nu * B[k - 1] / Bk
            B[k] = B[k - 1] * B[k] / Bk
            B[k - 1] = Bk
            b[k], b[k - 1] = b[k - 1], b[k]
            for j in range(k - 1):
                mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
            for i in range(k + 1, n):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - nu * t
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
            k = max(k - 1, 1)
    return [[int(x) for x in row] for row in b]


# ---------------------------------------------------------------------------
# integer relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegerRelation:
    coefficients: tuple
    residual: PreciseReal
    height: int


class PrecisionError(ValueError):
    """Inputs do not carry enough digits for the requested search."""


def _as_precise(x, default_precision):
    if isinstance(x, PreciseReal):
        return x
    return PreciseReal(mpf(x), default_precision)


def _relation_candidates(values, precision, height_bound, count=4):
    """Short vectors from the standard relation lattice [I | K*x]."""
    n = len(values)
    with mp.workdps(precision + GUARD_DIGITS):
        scale = mpf(10) ** precision
        col = [int(mpmath.nint(scale * v)) for v in values]
    rows = []
    for i in range(n):
        rows.append([1 if j == i else 0 for j in range(n)] + [col[i]])
    reduced = lll_reduce(rows)
    out = []
    for row in reduced[:count]:
        coeffs = tuple(row[:n])
        if all(c == 0 for c in coeffs):
            continue
        if max(abs(c) for c in coeffs) > height_bound:
            continue
        out.append(coeffs)
    return out


def integer_relation(xs, precision, height_bound):
    """Nonzero integer vector r with |sum r_i x_i| < 10^-(precision-12),
    confirmed at precision + 40 digits, or None.

    Inputs must carry at least precision + 40 digits so the confirmation is
    meaningful; a relation whose residual does not keep collapsing at the
    higher precision is a numerical coincidence and is discarded.
    """
    if not 2 <= len(xs) <= 8:
        raise ValueError("integer_relation takes between 2 and 8 values")
    xs = [_as_precise(x, precision) for x in xs]
    avail = min(x.precision for x in xs)
    if avail < precision:
        raise PrecisionError("values carry %d digits; %d requested" % (avail, precision))
    confirm = precision + 40
    if avail < confirm:
        raise PrecisionError(
            "two-precision confirmation needs %d digits, values carry %d"
            % (confirm, avail))
    if height_bound > 10 ** max(1, precision // 8):
        raise PrecisionError(
            "height bound %g too large for %d digits (limit 10^(precision/8))"
            % (height_bound, precision))
    with mp.workdps(confirm + GUARD_DIGITS):
        vals = [x.value for x in xs]
        mag = max(abs(v) for v in vals)
        if mag == 0:
            raise ValueError("all-zero input")
        find_tol = mpf(10) ** (-(precision - 12)) * max(mpf(1), mag)
        confirm_tol = mpf(10) ** (-(confirm - 12)) * max(mpf(1), mag)
        for coeffs in _relation_candidates(vals, precision, height_bound):
            residual = abs(sum(c * v for c, v in zip(coeffs, vals)))
            if residual >= find_tol:
                continue
            # confirmation at the higher precision
            if residual >= confirm_tol:
                continue
            height = max(abs(c) for c in coeffs)
            with mp.workdps(precision):
                return IntegerRelation(coeffs, PreciseReal(+residual, precision), int(height))
    return None


# ---------------------------------------------------------------------------
# constant identification
# ---------------------------------------------------------------------------

DEFAULT_BASIS = (
    ("log2", lambda: mp.log(2)),
    ("log3", lambda: mp.log(3)),
    ("pi", lambda: +mp.pi),
    ("pi^2", lambda: mp.pi ** 2),
    ("pi*sqrt3", lambda: mp.pi * mp.sqrt(3)),
    ("sqrt2", lambda: mp.sqrt(2)),
    ("sqrt3", lambda: mp.sqrt(3)),
    ("sqrt5", lambda: mp.sqrt(5)),
    ("2^(2/3)", lambda: mp.cbrt(4)),
    ("catalan", lambda: +mp.catalan),
    ("zeta3", lambda: mp.zeta(3)),
)


@dataclass(frozen=True)
class Identification:
    """Conjectural closed form for a constant.

    kind: 'rational' | 'algebraic' | 'linear_in_basis' | 'fractional_linear'
      rational          -> value: mpq
      algebraic         -> degree, polynomial (low-to-high integer coeffs,
                           primitive, positive leading)
      linear_in_basis   -> basis_name, pair (p, q): C = p + q*kappa
      fractional_linear -> basis_name, quadruple: C = (a + b*kappa)/(c + d*kappa)
    """

    kind: str
    verification_precision: int
    value: object = None
    degree: int = None
    polynomial: tuple = None
    basis_name: str = None
    pair: tuple = None
    quadruple: tuple = None

    def describe(self):
        if self.kind == "rational":
            return rational_str(self.value)
        if self.kind == "algebraic":
            terms = []
            for i, c in enumerate(self.polynomial):
                if c:
                    terms.append("%d*x^%d" % (c, i))
            return "root of %s = 0" % " + ".join(reversed(terms))
        if self.kind == "linear_in_basis":
            return "%s + %s*%s" % (rational_str(self.pair[0]),
                                   rational_str(self.pair[1]), self.basis_name)
        if self.kind == "fractional_linear":
            a, b, c, d = self.quadruple
            return "(%d + %d*%s)/(%d + %d*%s)" % (a, b, self.basis_name,
                                                  c, d, self.basis_name)
        return self.kind

    def to_json(self):
        d = {"kind": self.kind,
             "verification_precision": self.verification_precision,
             "description": self.describe()}
        if self.kind == "rational":
            d["value"] = rational_str(self.value)
        elif self.kind == "algebraic":
            d["degree"] = self.degree
            d["polynomial"] = [int(c) for c in self.polynomial]
        elif self.kind == "linear_in_basis":
            d["basis"] = self.basis_name
            d["pair"] = [rational_str(self.pair[0]), rational_str(self.pair[1])]
        elif self.kind == "fractional_linear":
            d["basis"] = self.basis_name
            d["quadruple"] = [int(x) for x in self.quadruple]
        return d

    @staticmethod
    def from_json(d):
        kind = d["kind"]
        kw = {"verification_precision": d["verification_precision"]}
        if kind == "rational":
            kw["value"] = rational(d["value"])
        elif kind == "algebraic":
            kw["degree"] = d["degree"]
            kw["polynomial"] = tuple(d["polynomial"])
        elif kind == "linear_in_basis":
            kw["basis_name"] = d["basis"]
            kw["pair"] = (rational(d["pair"][0]), rational(d["pair"][1]))
        elif kind == "fractional_linear":
            kw["basis_name"] = d["basis"]
            kw["quadruple"] = tuple(d["quadruple"])
        return Identification(kind, **kw)


def _primitive_positive(coeffs):
    from gmpy2 import gcd as _gcd
    g = mpz(0)
    for c in coeffs:
        g = _gcd(g, mpz(c))
    if g == 0:
        return tuple(int(c) for c in coeffs)
    out = [int(mpz(c) // g) for c in coeffs]
    lead = next((c for c in reversed(out) if c != 0), 1)
    if lead < 0:
        out = [-c for c in out]
    return tuple(out)


def _square_part(n):
    """(s, d) with n = s^2 * d, d squarefree up to a 10^5 trial bound."""
    from gmpy2 import isqrt
    n = mpz(n)
    s, d = mpz(1), mpz(1)
    for p in range(2, 100000):
        if p * p > n:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            s *= mpz(p) ** (e // 2)
            if e % 2:
                d *= p
    r = isqrt(n)
    if r * r == n:
        s *= r
    else:
        d *= n
    return s, d


def _quadratic_as_surd(poly, value, precision, basis):
    """Rewrite a quadratic-irrational hit p + q*sqrt(D) over a basis surd.

    Returns a linear_in_basis Identification when the root field is one of
    the basis square roots, else None (the polynomial form stands)."""
    c0, c1, c2 = poly
    disc = mpz(c1) * c1 - 4 * mpz(c0) * c2
    if disc <= 0:
        return None
    s, d = _square_part(disc)
    name = {2: "sqrt2", 3: "sqrt3", 5: "sqrt5"}.get(int(d))
    if name is None:
        return None
    p = mpq(-c1, 2 * c2)
    q = mpq(int(s), 2 * c2)
    named = dict(basis)
    with mp.workdps(precision + GUARD_DIGITS):
        kappa = named[name]()
        pv = mpf(p.numerator) / p.denominator
        qv = mpf(q.numerator) / q.denominator
        if abs(pv + qv * kappa - value) > abs(pv - qv * kappa - value):
            q = -q
    return Identification("linear_in_basis", precision, basis_name=name, pair=(p, q))


def identify_constant(C, precision, height_bound=None, basis=DEFAULT_BASIS):
    """Climb the identification ladder: rational, quadratic/cubic algebraic,
    a + b*kappa over the basis list, then fractional-linear
    (a + b*kappa)/(c + d*kappa).  First verified match wins.

    Candidates re-verify at 40 extra digits before being believed; None means
    nothing matched, which for this pipeline is the interesting outcome.
    All matches are conjectural.
    """
    if precision < 60:
        raise PrecisionError("identification needs at least 60 digits")
    C = _as_precise(C, precision)
    if C.precision < precision + 40:
        raise PrecisionError("identify_constant needs C at precision + 40 digits")
    if height_bound is None:
        height_bound = min(10 ** 12, 10 ** max(1, precision // 8))

    def relation(values):
        try:
            return integer_relation(values, precision, height_bound)
        except PrecisionError:
            return None

    cp = C.precision
    with mp.workdps(cp + GUARD_DIGITS):
        cv = C.value
        rel = relation([PreciseReal(cv, cp), PreciseReal(mpf(1), cp)])
        if rel is not None:
            q, p = rel.coefficients
            if q != 0:
                return Identification("rational", precision, value=mpq(-int(p), int(q)))
        for degree in (2, 3):
            powers = [PreciseReal(cv ** i, cp) for i in range(degree + 1)]
            rel = relation(powers)
            if rel is not None and any(rel.coefficients[2:]):
                poly = _primitive_positive(rel.coefficients)
                if max(i for i, c in enumerate(poly) if c) == 2:
                    # quadratic irrationals over a basis surd read better as
                    # p + q*sqrt(D), matching the reported table forms
                    surd = _quadratic_as_surd(poly[:3], cv, precision, basis)
                    if surd is not None:
                        return surd
                return Identification(
                    "algebraic", precision,
                    degree=max(i for i, c in enumerate(poly) if c),
                    polynomial=poly)
        for name, make in basis:
            kappa = make()
            rel = relation([PreciseReal(mpf(1), cp), PreciseReal(kappa, cp),
                            PreciseReal(cv, cp)])
            if rel is not None:
                r0, r1, r2 = rel.coefficients
                if r2 != 0 and r1 != 0:
                    return Identification("linear_in_basis", precision, basis_name=name,
                                          pair=(mpq(-int(r0), int(r2)), mpq(-int(r1), int(r2))))
        for name, make in basis:
            kappa = make()
            rel = relation([PreciseReal(mpf(1), cp), PreciseReal(kappa, cp),
                            PreciseReal(cv, cp), PreciseReal(kappa * cv, cp)])
            if rel is not None:
                r0, r1, r2, r3 = (int(x) for x in rel.coefficients)
                a, b, c, d = -r0, -r1, r2, r3
                if (c, d) != (0, 0) and a * d != b * c and c + d * kappa != 0:
                    return Identification("fractional_linear", precision,
                                          basis_name=name, quadruple=(a, b, c, d))
    return None


def evaluate_identification(ident, precision, basis=DEFAULT_BASIS):
    """Numeric value of a non-algebraic Identification (soundness checks).

    Algebraic identifications are checked through their polynomial residual
    instead; see identification_residual.
    """
    named = dict(basis)
    with mp.workdps(precision + GUARD_DIGITS):
        if ident.kind == "rational":
            v = mpf(ident.value.numerator) / mpf(ident.value.denominator)
        elif ident.kind == "linear_in_basis":
            kappa = named[ident.basis_name]()
            p, q = ident.pair
            v = (mpf(p.numerator) / p.denominator
                 + (mpf(q.numerator) / q.denominator) * kappa)
        elif ident.kind == "fractional_linear":
            kappa = named[ident.basis_name]()
            a, b, c, d = ident.quadruple
            v = (a + b * kappa) / (c + d * kappa)
        else:
            raise ValueError("no direct value for kind %r" % (ident.kind,))
        with mp.workdps(precision):
            return PreciseReal(+v, precision)


def identification_residual(ident, C, precision, basis=DEFAULT_BASIS):
    """|identified form - C| (or |p(C)| for algebraic), at `precision`."""
    C = _as_precise(C, precision)
    with mp.workdps(precision + GUARD_DIGITS):
        if ident.kind == "algebraic":
            acc = mpf(0)
            for c in reversed(ident.polynomial):
                acc = acc * C.value + c
            res = abs(acc)
        else:
            res = abs(evaluate_identification(ident, precision, basis).value - C.value)
        with mp.workdps(precision):
            return PreciseReal(+res, precision)


def equivalent_constants(C1, C2, precision, height_bound):
    """Integer quadruple (a,b,c,d) with C2 = (a + b*C1)/(c + d*C1), or None.

    Found via a relation on [1, C1, C2, C1*C2]; degenerate quadruples
    (a*d = b*c, the map collapses to a constant) are rejected and the search
    continues through the remaining short lattice vectors.
    """
    C1 = _as_precise(C1, precision)
    C2 = _as_precise(C2, precision)
    avail = min(C1.precision, C2.precision)
    confirm = precision + 40
    if avail < confirm:
        raise PrecisionError("equivalence check needs %d digits" % confirm)
    with mp.workdps(avail + GUARD_DIGITS):
        v1, v2 = C1.value, C2.value
        vals = [mpf(1), v1, v2, v1 * v2]
        mag = max(abs(v) for v in vals)
        find_tol = mpf(10) ** (-(precision - 12)) * max(mpf(1), mag)
        confirm_tol = mpf(10) ** (-(confirm - 12)) * max(mpf(1), mag)
        for coeffs in _relation_candidates(vals, precision, height_bound, count=6):
            residual = abs(sum(c * v for c, v in zip(coeffs, vals)))
            if residual >= find_tol or residual >= confirm_tol:
                continue
            r0, r1, r2, r3 = (int(x) for x in coeffs)
            a, b, c, d = -r0, -r1, r2, r3
            if a * d == b * c:
                continue
            if c + d * v1 == 0:
                continue
            return (a, b, c, d)
    return None
