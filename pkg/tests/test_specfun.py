import math

import numpy as np
import pytest
from scipy import special

from ortholab.specfun import (
    DomainError,
    SeriesControl,
    TruncationError,
    UnderflowWarning,
    appell_f4,
    bessel_k,
    bessel_k_integral,
    besseli_entire,
    gauss_2f1,
    log_gamma,
    log_pochhammer,
    pochhammer_ratio_limit_check,
)

# reference values below were produced with mpmath at 40 digits
F4_BRUTE = 2.439024390243902439  # double sum over m, n <= 200
K0_AT_1 = 0.42102443824070833334
K15_AT_25 = 0.091092320415613984504
I0_AT_2 = 2.2795853023360672674
E15_AT_W = complex(0.82400919520105115137, -0.22814536951595241803)
HYP_COMPLEX = complex(1.1309355751789981, 0.19449159188390690999)
HYP_NEG = 0.80013025508776880704


class TestSeriesControl:
    def test_defaults_valid(self):
        c = SeriesControl()
        assert c.max_terms >= 8 and 0 < c.rel_tol < 1 and c.consecutive_small >= 2

    @pytest.mark.parametrize("kw", [dict(max_terms=4), dict(rel_tol=0.0), dict(rel_tol=1.0),
                                    dict(consecutive_small=1), dict(max_terms=10.5)])
    def test_rejects_bad_fields(self, kw):
        with pytest.raises(ValueError):
            SeriesControl(**kw)


class TestLogGamma:
    @pytest.mark.parametrize("x, want", [(1.0, 0.0), (0.5, math.log(math.sqrt(math.pi))),
                                         (6.0, math.log(120.0))])
    def test_values(self, x, want):
        assert log_gamma(x) == pytest.approx(want, abs=1e-14)

    @pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            log_gamma(x)

    def test_pochhammer(self):
        assert math.exp(log_pochhammer(2.5, 3)) == pytest.approx(2.5 * 3.5 * 4.5, rel=1e-14)
        assert log_pochhammer(0.7, 0) == 0.0


class TestBesselEntire:
    def test_origin(self):
        assert besseli_entire(1.5, 0) == pytest.approx(1 / math.gamma(2.5), rel=1e-15)

    def test_half_order_closed_form(self):
        # E_{1/2}(1) = I_{1/2}(2) = sqrt(1/pi) sinh 2
        assert besseli_entire(0.5, 1.0).real == pytest.approx(math.sinh(2) / math.sqrt(math.pi),
                                                              rel=1e-14)

    def test_order_zero(self):
        assert besseli_entire(0.0, 1.0).real == pytest.approx(I0_AT_2, rel=1e-14)

    def test_complex_argument(self):
        assert besseli_entire(1.5, complex(0.3, -0.7)) == pytest.approx(E15_AT_W, rel=1e-14)

    def test_matches_scipy_on_positive_axis(self):
        for w in (0.1, 2.0, 30.0):
            want = w ** -0.25 * special.iv(0.5, 2 * math.sqrt(w))
            assert besseli_entire(0.5, w).real == pytest.approx(want, rel=1e-13)

    def test_domain(self):
        with pytest.raises(DomainError):
            besseli_entire(-1.0, 1.0)

    def test_truncation_error(self):
        with pytest.raises(TruncationError):
            besseli_entire(0.5, 500.0, SeriesControl(max_terms=10))


class TestBesselK:
    def test_half_order(self):
        assert bessel_k(0.5, 1.0) == pytest.approx(math.sqrt(math.pi / 2) * math.exp(-1), rel=1e-14)

    def test_order_zero(self):
        assert bessel_k(0.0, 1.0) == pytest.approx(K0_AT_1, rel=1e-14)

    @pytest.mark.parametrize("nu", [0.0, 0.5, 1.5, 3.0])
    def test_asymptotic(self, nu):
        approx = math.sqrt(math.pi / 100) * math.exp(-50)
        assert abs(bessel_k(nu, 50.0) / approx - 1) < 0.02 * (1 + nu * nu)

    @pytest.mark.parametrize("nu, x, want", [(0.0, 1.0, K0_AT_1), (1.5, 2.5, K15_AT_25)])
    def test_integral_route(self, nu, x, want):
        assert bessel_k_integral(nu, x) == pytest.approx(want, rel=1e-13)

    @pytest.mark.parametrize("nu", [0.0, 0.5, 1.5, 4.0])
    @pytest.mark.parametrize("x", [0.05, 0.7, 3.0, 40.0])
    def test_two_routes_agree(self, nu, x):
        assert bessel_k(nu, x) == pytest.approx(bessel_k_integral(nu, x), rel=1e-12)

    def test_vectorised(self):
        x = np.array([0.5, 1.0, 2.0])
        assert bessel_k(0.5, x).shape == (3,)

    def test_domain(self):
        with pytest.raises(DomainError):
            bessel_k(0.5, 0.0)
        with pytest.raises(DomainError):
            bessel_k_integral(0.5, -1.0)

    def test_underflow_warns(self):
        with pytest.warns(UnderflowWarning):
            assert bessel_k(0.0, 800.0) == 0.0


class TestGauss2F1:
    def test_origin(self):
        assert gauss_2f1(0.3, 0.4, 0.5, 0) == 1

    def test_log_identity(self):
        assert gauss_2f1(1, 1, 2, 0.5).real == pytest.approx(2 * math.log(2), rel=1e-14)

    def test_binomial(self):
        assert gauss_2f1(0.7, 1.3, 1.3, 0.4).real == pytest.approx(0.6 ** -0.7, rel=1e-14)

    def test_complex(self):
        assert gauss_2f1(0.6, 1.1, 2.3, complex(0.5, 0.4)) == pytest.approx(HYP_COMPLEX, rel=1e-13)

    def test_negative(self):
        assert gauss_2f1(0.5, 1, 1.5, -0.9).real == pytest.approx(HYP_NEG, rel=1e-13)

    def test_guard(self):
        with pytest.raises(DomainError):
            gauss_2f1(1, 1, 2, 0.98)

    def test_bad_c(self):
        with pytest.raises(DomainError):
            gauss_2f1(1, 1, -2.0, 0.1)


class TestAppellF4:
    def test_origin(self):
        assert appell_f4(1, 2, 1.5, 2.5, 0, 0) == 1

    def test_reduces_to_2f1(self):
        assert appell_f4(0.7, 1.1, 1.5, 2.5, 0.3, 0) == gauss_2f1(0.7, 1.1, 1.5, 0.3)
        assert appell_f4(0.7, 1.1, 1.5, 2.5, 0, 0.3) == gauss_2f1(0.7, 1.1, 2.5, 0.3)

    def test_brute_force(self):
        assert appell_f4(1.5, 2, 1.5, 1.5, 0.1, 0.2).real == pytest.approx(F4_BRUTE, rel=1e-13)

    def test_symmetry(self):
        v1 = appell_f4(1.2, 1.7, 1.5, 2.5, 0.1 + 0.05j, 0.2 - 0.1j)
        v2 = appell_f4(1.2, 1.7, 2.5, 1.5, 0.2 - 0.1j, 0.1 + 0.05j)
        assert v1 == pytest.approx(v2, rel=1e-14)

    def test_guard(self):
        with pytest.raises(DomainError):
            appell_f4(1, 1, 1, 1, 0.25, 0.25)

    def test_bad_c(self):
        with pytest.raises(DomainError):
            appell_f4(1, 1, 0.0, 1, 0.1, 0.1)


class TestPochhammerRatio:
    def test_equal_arguments(self):
        assert np.allclose(pochhammer_ratio_limit_check(1.3, 1.3, 50), 1.0, rtol=1e-13)

    def test_shift_by_one(self):
        r = pochhammer_ratio_limit_check(2.0, 1.0, 100)
        assert r[-1] == pytest.approx(1.01, rel=1e-12)

    def test_half_shift(self):
        r = pochhammer_ratio_limit_check(1.5, 0.5, 100)
        assert r[-1] == pytest.approx(1.005, rel=1e-12)

    def test_small_kmax(self):
        with pytest.raises(ValueError):
            pochhammer_ratio_limit_check(1, 2, 5)
