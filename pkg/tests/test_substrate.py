import math

import mpmath
import pytest
from gmpy2 import mpq, mpz
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from irrcert import substrate as S

from conftest import close


class TestRational:
    def test_lowest_terms(self):
        q = S.rational(6, 4)
        assert q.numerator == 3 and q.denominator == 2

    def test_zero(self):
        q = S.rational(0)
        assert q.numerator == 0 and q.denominator == 1

    @given(st.integers(-10**12, 10**12), st.integers(1, 10**12))
    def test_normalized(self, num, den):
        q = S.rational(num, den)
        assert q.denominator >= 1
        assert math.gcd(int(abs(q.numerator)), int(q.denominator)) == 1

    def test_strings(self):
        assert S.rational_str(S.rational(-125, 4)) == "-125/4"
        assert S.rational_str(S.rational(19)) == "19"
        assert S.rational("-8705/36") == mpq(-8705, 36)


class TestPreciseReal:
    def test_min_precision_arithmetic(self):
        with mp.workdps(60):
            x = S.PreciseReal(mpf(2), 50)
            y = S.PreciseReal(mpf(3), 30)
        assert S.real_add(x, y).precision == 30
        assert S.real_mul(x, y).precision == 30

    def test_json_round_trip(self):
        with mp.workdps(40):
            x = S.PreciseReal(mp.sqrt(2), 35)
        back = S.PreciseReal.from_json(x.to_json())
        assert back.precision == 35
        assert close(back.value, x.value, mpf(10) ** -33, dps=40)


class TestDigamma:
    def test_at_one_is_minus_euler(self):
        v = S.digamma(1, 30)
        assert close(v.value, "-0.57721566490153286060651209008", "1e-28", dps=35)

    def test_at_half(self):
        v = S.digamma(S.rational(1, 2), 30)
        with mp.workdps(40):
            expect = -mp.euler - 2 * mp.log(2)
        assert close(v.value, expect, "1e-28", dps=40)

    def test_at_two(self):
        v = S.digamma(2, 30)
        with mp.workdps(40):
            assert close(v.value, 1 - mp.euler, "1e-28", dps=40)

    def test_matches_mpmath_at_high_precision(self):
        for x in (S.rational(1, 3), S.rational(7, 2), S.rational(23, 7)):
            v = S.digamma(x, 120)
            with mp.workdps(140):
                ref = mpmath.digamma(mpf(x.numerator) / int(x.denominator))
            assert close(v.value, ref, mpf(10) ** -118, dps=140)

    @given(st.integers(1, 400), st.integers(1, 40))
    @settings(max_examples=30, deadline=None)
    def test_recurrence_property(self, num, den):
        x = S.rational(num, den)
        prec = 30
        lhs = S.digamma(x + 1, prec).value
        rhs = S.digamma(x, prec).value
        with mp.workdps(prec + 10):
            gap = abs(lhs - rhs - mpf(int(x.denominator)) / int(x.numerator))
        assert gap < mpf(10) ** (-prec + 2)

    def test_pole_rejected(self):
        with pytest.raises(ValueError):
            S.digamma(0, 30)
        with pytest.raises(ValueError):
            S.digamma(-3, 30)


class TestPrimes:
    def test_examples(self):
        assert S.primes_in(0, 10) == [2, 3, 5, 7]
        assert S.primes_in(10, 11) == [11]
        assert S.primes_in(23, 28) == []

    def test_bounds_are_strict_left_inclusive_right(self):
        assert 23 not in S.primes_in(23, 29)
        assert 29 in S.primes_in(23, 29)

    @given(st.integers(0, 5000), st.integers(0, 2000))
    @settings(max_examples=25, deadline=None)
    def test_against_naive(self, lo, width):
        hi = lo + width

        def is_prime(m):
            if m < 2:
                return False
            return all(m % d for d in range(2, int(m ** 0.5) + 1))

        assert S.primes_in(lo, hi) == [m for m in range(lo + 1, hi + 1) if is_prime(m)]

    def test_large_segment(self):
        ps = S.primes_in(9_999_000, 10_000_000)
        assert ps[-1] == 9999991 and len(ps) == 53


class TestLcmRange:
    def test_examples(self):
        assert S.lcm_range(1) == 1
        assert S.lcm_range(6) == 60
        # oracle: direct fold of lcm over 1..10
        acc = 1
        for m in range(1, 11):
            acc = acc * m // math.gcd(acc, m)
        assert S.lcm_range(10) == acc == 2520

    @given(st.integers(2, 300))
    @settings(max_examples=25, deadline=None)
    def test_divisibility_and_steps(self, n):
        lst = S.lcm_range_list(n)
        assert all(lst[n] % k == 0 for k in range(1, n + 1))
        step = lst[n] // lst[n - 1]
        if step > 1:
            # step is a prime power: only one prime divides it
            divs = [p for p in S.primes_in(0, int(step)) if step % p == 0]
            assert len(divs) == 1

    def test_list_matches_scalar(self):
        lst = S.lcm_range_list(50)
        assert [int(x) for x in lst[1:]] == [int(S.lcm_range(n)) for n in range(1, 51)]

    def test_chebyshev_growth(self):
        # prime number theorem check at n = 100000
        n = 100000
        val = S.log_of_integer(S.lcm_range(n)) / n
        assert abs(val - 1) < 0.02


class TestLogOfInteger:
    @given(st.integers(1, 10**18))
    @settings(max_examples=50)
    def test_small_matches_math(self, n):
        assert abs(S.log_of_integer(n) - math.log(n)) < 1e-9

    def test_huge(self):
        n = mpz(10) ** 5000 * 7
        assert abs(S.log_of_integer(n) - (5000 * math.log(10) + math.log(7))) < 1e-6
