import mpmath
import pytest
from gmpy2 import mpq
from mpmath import mp, mpf

from irrcert import quadrature as Q
from irrcert.quadrature import DomainError, GaussKernel, IntegralFamily

from conftest import close, rel_close


class TestTanhSinh1D:
    def test_log_two(self):
        res = Q.tanh_sinh_1d(lambda x, cx: 1 / (1 + x), 50)
        with mp.workdps(60):
            assert close(res.value.value, mp.log(2), mpf(10) ** -49, dps=60)
        assert res.error_estimate.value >= 0

    def test_inverse_sqrt_singularity(self):
        res = Q.tanh_sinh_1d(lambda x, cx: x ** mpf("-0.5"), 50)
        assert close(res.value.value, 2, mpf(10) ** -49, dps=60)

    def test_constant_one(self):
        res = Q.tanh_sinh_1d(lambda x, cx: mpf(1), 50)
        assert close(res.value.value, 1, mpf(10) ** -49, dps=60)

    def test_right_endpoint_singularity(self):
        # (1-x)^(-6/7): the node pairs carry 1-x exactly
        res = Q.tanh_sinh_1d(lambda x, cx: cx ** (mpf(-6) / 7), 60)
        assert close(res.value.value, 7, mpf(10) ** -58, dps=70)

    @pytest.mark.parametrize("degree", [0, 1, 5, 12, 20])
    def test_polynomial_exactness(self, degree):
        res = Q.tanh_sinh_1d(lambda x, cx: x ** degree, 60)
        with mp.workdps(70):
            expect = mpf(1) / (degree + 1)
        assert rel_close(res.value.value, expect, mpf(10) ** -59, dps=70)

    def test_log_singularity(self):
        res = Q.tanh_sinh_1d(lambda x, cx: mp.log(x), 50)
        assert close(res.value.value, -1, mpf(10) ** -48, dps=60)


class TestGaussKernel:
    @pytest.mark.parametrize("abc", [
        (1.5, 2.25, 4.75),   # generic
        (1, 1, 2),           # log case m = 0
        (2, 3, 5),           # log case m = 0
        (2, 3, 7),           # m = 2
        (1.5, 1.5, 3.0),     # m = 0, non-integer params
        (2.5, 1.0, 2.0),     # m negative integer
        (36, 36, 72),        # large parameters (deep cancellation band)
        (12.5, 11, 24),      # generic m = 1/2
    ])
    def test_matches_mpmath(self, abc):
        a, b, c = abc
        with mp.workdps(80):
            k = GaussKernel(mpf(a), mpf(b), mpf(c))
            for cz in ("0.5", "0.3", "0.01", "1e-4", "1e-12", "1e-40"):
                czv = mpf(cz)
                got = k.at(1 - czv, czv)
                with mp.extradps(120):
                    ref = mpmath.hyp2f1(a, b, c, 1 - mpf(cz))
                assert rel_close(got, ref, mpf(10) ** -75, dps=90), (abc, cz)

    def test_terminating(self):
        with mp.workdps(40):
            k = GaussKernel(mpf(0), mpf(3), mpf(5))
            assert k.at(mpf("0.999"), mpf("0.001")) == 1


ZETA2_CLASSICAL = IntegralFamily.zeta2(0, 0, 0, 0)


class TestFamilies:
    def test_zeta2_basel_value(self):
        res = Q.family_integral(ZETA2_CLASSICAL, 0, 30)
        with mp.workdps(40):
            assert rel_close(res.value.value, mp.pi ** 2 / 6, mpf(10) ** -29, dps=40)

    def test_zeta2_printed_values(self):
        expected = {1: "0.06519779945532069058275450006",
                    10: "4.17922459e-12"}
        for n, val in expected.items():
            res = Q.family_integral(ZETA2_CLASSICAL, n, 30)
            assert rel_close(res.value.value, mpf(val), mpf(10) ** -9, dps=40)

    def test_catalan_family_value(self):
        # Beta-normalized C2(1/2,0,0,1/2) is 2*Catalan (the raw integral is
        # the 8*Catalan one)
        fam = IntegralFamily.zeta2(mpq(1, 2), 0, 0, mpq(1, 2))
        res = Q.family_integral(fam, 0, 40)
        with mp.workdps(50):
            assert rel_close(res.value.value, 2 * mp.catalan, mpf(10) ** -39, dps=50)

    def test_two_log_two_family(self):
        fam = IntegralFamily.zeta2(0, 0, mpq(1, 2), 0)
        res = Q.family_integral(fam, 0, 40)
        with mp.workdps(50):
            assert rel_close(res.value.value, 2 * mp.log(2), mpf(10) ** -39, dps=50)

    def test_log1_log_two(self):
        fam = IntegralFamily.log1(0, 0, 1)
        res = Q.family_integral(fam, 0, 40)
        with mp.workdps(50):
            assert rel_close(res.value.value, mp.log(2), mpf(10) ** -39, dps=50)

    def test_log_ratio_closed_form(self):
        # ratio of int (1+x)^-3/2 to int (1+x)^-1/2 over (0,1):
        # (2 - sqrt2) / (2 sqrt2 - 2) = 1/sqrt2
        fam = IntegralFamily.log_ratio(0, 0, 1, mpq(1, 2))
        res = Q.family_integral(fam, 0, 40)
        with mp.workdps(50):
            assert rel_close(res.value.value, 1 / mp.sqrt(2), mpf(10) ** -39, dps=50)

    def test_zeta3k_classical_is_twice_zeta3(self):
        # the triple integral of the classical kernel at power n+1; its
        # index-0 value is 2*zeta(3) (consistent with initial terms a1 = 12,
        # b1 = 5, since 10*zeta(3) - 12 is small and positive)
        fam = IntegralFamily.zeta3k(0, 0, 0, 0, 0)
        res = Q.family_integral(fam, 0, 40)
        with mp.workdps(50):
            assert rel_close(res.value.value, 2 * mp.zeta(3), mpf(10) ** -39, dps=50)
        res1 = Q.family_integral(fam, 1, 40)
        with mp.workdps(50):
            assert rel_close(res1.value.value, 10 * mp.zeta(3) - 12, mpf(10) ** -38, dps=50)

    def test_zeta3k_half_half_log2_form(self):
        fam = IntegralFamily.zeta3k(0, 0, 0, mpq(1, 2), mpq(1, 2))
        res = Q.family_integral(fam, 0, 40)
        with mp.workdps(50):
            expect = -(2 - 4 * mp.log(2)) / (3 - 4 * mp.log(2))
            assert rel_close(res.value.value, expect, mpf(10) ** -39, dps=50)

    def test_monotone_decay(self):
        prev = None
        for n in range(6):
            v = Q.family_integral(ZETA2_CLASSICAL, n, 25).value.value
            if prev is not None:
                assert v < prev
            prev = v


class TestFamilyValidation:
    def test_divergent_zeta3k_tuple_rejected(self):
        # numerator power d+1 at n=0 diverges along the z=1 edges when
        # b+c+1 <= d; the all-zero-exponent, d=1 tuple is the canonical case
        with pytest.raises(DomainError):
            IntegralFamily.zeta3k(0, 0, 0, 1, 0)

    def test_zeta2_corner_divergence_rejected(self):
        with pytest.raises(DomainError):
            IntegralFamily.zeta2(0, mpq(1, 2), 0, mpq(1, 2))

    def test_zeta2_exponent_bound(self):
        with pytest.raises(DomainError):
            IntegralFamily.zeta2(2, 0, 0, 0)

    def test_log1_kernel_sign(self):
        with pytest.raises(DomainError):
            IntegralFamily.log1(0, 0, -2)

    def test_param_count(self):
        with pytest.raises(DomainError):
            IntegralFamily("Zeta2", (0, 0, 0))

    def test_params_stored_exact(self):
        fam = IntegralFamily.zeta2(mpq(-6, 7), mpq(-6, 7), mpq(-4, 7), mpq(-3, 7))
        assert fam.params == (mpq(-6, 7), mpq(-6, 7), mpq(-4, 7), mpq(-3, 7))
        assert fam.param_key() == "-6/7,-6/7,-4/7,-3/7"


class TestCrossChecks:
    def test_zeta2_symmetry_permutation(self):
        # permuting integration order swaps (a1,a2) with (b1,b2)
        fam1 = IntegralFamily.zeta2(mpq(1, 3), 0, 0, mpq(1, 4))
        fam2 = IntegralFamily.zeta2(0, mpq(1, 4), mpq(1, 3), 0)
        v1 = Q.family_integral(fam1, 1, 30).value.value
        v2 = Q.family_integral(fam2, 1, 30).value.value
        with mp.workdps(40):
            assert abs(v1 - v2) < mpf(10) ** -27 * abs(v1)

    @pytest.mark.slow
    def test_zeta2_iterated_matches_reduced(self):
        v1 = Q.family_integral(ZETA2_CLASSICAL, 1, 15).value.value
        v2 = Q.family_integral_iterated(ZETA2_CLASSICAL, 1, 15).value.value
        with mp.workdps(25):
            assert abs(v1 - v2) < mpf(10) ** -13 * abs(v1)

    @pytest.mark.nightly
    def test_zeta3k_iterated_matches_reduced(self):
        fam = IntegralFamily.zeta3k(0, 0, 0, mpq(1, 2), mpq(1, 2))
        v1 = Q.family_integral(fam, 1, 8).value.value
        v2 = Q.family_integral_iterated(fam, 1, 8).value.value
        with mp.workdps(20):
            assert abs(v1 - v2) < mpf(10) ** -5 * abs(v1)

    def test_convergence_error_carries_best(self):
        # an integrand tanh-sinh cannot handle at this level budget
        with pytest.raises(Q.ConvergenceError) as err:
            Q.tanh_sinh_1d(lambda x, cx: mp.sin(1 / x) / x, 30, max_level=6)
        assert err.value.levels_used == 6
