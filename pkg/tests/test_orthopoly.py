import math

import numpy as np
import pytest
from scipy import special

from ortholab.orthopoly import (
    MAX_DEGREE,
    FamilySpec,
    Kind,
    PolynomialOverflowError,
    eval_orthonormal,
    eval_orthonormal_all,
    gegenbauer_tau,
    jacobi_tau,
    recurrence_coeffs,
    standard_scale,
    total_mass,
)
from ortholab.specfun import DomainError

# mpmath references (40 digits)
JACOBI_REF = complex(0.99519871538454228862, 0.0069540225210509482982)   # P_5^(0.3,-0.4)(0.2+0.1i)
HERMITE_REF = complex(1.9315188424142515142, -0.60513792340826525967)    # k=7 at 1.3-0.4i
LAGUERRE_REF = complex(1.8250307567919316771, -0.089598488797479622077)  # nu=0.5, k=6 at 2.5+i
GEGENBAUER_REF = -0.8285233279376955681                                  # lam=1, k=4 at 0.7


def test_gegenbauer_is_jacobi():
    assert FamilySpec.gegenbauer(1.5).jacobi_params == (1.0, 1.0)
    assert FamilySpec.chebyshev_t().jacobi_params == (-0.5, -0.5)


@pytest.mark.parametrize("bad", [lambda: FamilySpec.laguerre(-1.0),
                                 lambda: FamilySpec.jacobi(-1.0, 0.0),
                                 lambda: FamilySpec.gegenbauer(-0.1)])
def test_parameter_ranges(bad):
    with pytest.raises(DomainError):
        bad()


def test_masses():
    assert jacobi_tau(0.5, 0.5) == pytest.approx(math.pi / 2, rel=1e-15)
    assert gegenbauer_tau(0.0) == pytest.approx(math.pi, rel=1e-15)
    assert total_mass(FamilySpec.hermite()) == pytest.approx(math.sqrt(math.pi))
    assert total_mass(FamilySpec.laguerre(0.5)) == pytest.approx(math.gamma(1.5))


class TestRecurrence:
    @pytest.mark.parametrize("k", range(6))
    def test_hermite(self, k):
        assert recurrence_coeffs(FamilySpec.hermite(), k) == (0.0, pytest.approx(math.sqrt(k / 2)))

    @pytest.mark.parametrize("k", range(6))
    def test_laguerre(self, k):
        a, b = recurrence_coeffs(FamilySpec.laguerre(0.5), k)
        assert a == 2 * k + 1.5 and b == pytest.approx(math.sqrt(k * (k + 0.5)))

    def test_jacobi_first(self):
        a0, b0 = recurrence_coeffs(FamilySpec.jacobi(0.3, 1.2), 0)
        assert a0 == pytest.approx((1.2 - 0.3) / 3.5) and b0 == 0.0

    def test_chebyshev_regular(self):
        # alpha + beta = -1 makes the textbook k = 1 formula 0/0
        fam = FamilySpec.chebyshev_t()
        assert recurrence_coeffs(fam, 1)[1] == pytest.approx(math.sqrt(0.5), rel=1e-15)
        assert recurrence_coeffs(fam, 5)[1] == pytest.approx(0.5, rel=1e-15)


class TestEvaluation:
    def test_hermite_zero(self):
        assert eval_orthonormal(FamilySpec.hermite(), 0, 3.7) == pytest.approx(math.pi ** -0.25)

    def test_laguerre_zero(self):
        assert eval_orthonormal(FamilySpec.laguerre(1.5), 0, 2.0) == pytest.approx(
            math.gamma(2.5) ** -0.5)

    def test_chebyshev_two(self):
        want = math.sqrt(2 / math.pi) * math.cos(2 * math.acos(0.3))
        assert eval_orthonormal(FamilySpec.chebyshev_t(), 2, 0.3) == pytest.approx(want, rel=1e-14)

    @pytest.mark.parametrize("fam, k, z, ref", [
        (FamilySpec.jacobi(0.3, -0.4), 5, 0.2 + 0.1j, JACOBI_REF),
        (FamilySpec.hermite(), 7, 1.3 - 0.4j, HERMITE_REF),
        (FamilySpec.laguerre(0.5), 6, 2.5 + 1j, LAGUERRE_REF),
        (FamilySpec.gegenbauer(1.0), 4, 0.7, GEGENBAUER_REF),
    ])
    def test_high_precision_references(self, fam, k, z, ref):
        assert eval_orthonormal(fam, k, z) == pytest.approx(ref, rel=1e-13)

    @pytest.mark.parametrize("fam, std", [
        (FamilySpec.hermite(), lambda k, x: special.eval_hermite(k, x)),
        (FamilySpec.laguerre(0.5), lambda k, x: special.eval_genlaguerre(k, 0.5, x)),
        (FamilySpec.jacobi(0.5, 1.5), lambda k, x: special.eval_jacobi(k, 0.5, 1.5, x)),
        (FamilySpec.gegenbauer(1.5), lambda k, x: special.eval_gegenbauer(k, 1.5, x)),
        (FamilySpec.chebyshev_t(), lambda k, x: special.eval_chebyt(k, x)),
    ])
    def test_standard_scale_against_scipy(self, fam, std):
        x = np.linspace(-0.9, 0.9, 7) if fam.is_jacobi_type else np.linspace(0.1, 4, 7)
        vals = eval_orthonormal_all(fam, 12, x)
        for k in range(13):
            assert np.allclose(standard_scale(fam, k) * vals[k], std(k, x), rtol=1e-12, atol=1e-12)

    def test_real_in_real_out(self):
        assert eval_orthonormal_all(FamilySpec.hermite(), 3, np.array([0.5])).dtype == float
        assert eval_orthonormal_all(FamilySpec.hermite(), 3, np.array([0.5j])).dtype == complex

    def test_shape(self):
        z = np.zeros((4, 5))
        assert eval_orthonormal_all(FamilySpec.hermite(), 6, z).shape == (7, 4, 5)

    def test_degree_limit(self):
        with pytest.raises(ValueError):
            eval_orthonormal_all(FamilySpec.hermite(), MAX_DEGREE + 1, 0.0)

    def test_overflow_detected(self):
        with pytest.raises(PolynomialOverflowError):
            eval_orthonormal_all(FamilySpec.jacobi(0.0, 0.0), 200, 1e150)


def test_standard_scale_examples():
    assert standard_scale(FamilySpec.hermite(), 0) == pytest.approx(math.pi ** 0.25)
    assert standard_scale(FamilySpec.chebyshev_t(), 0) == pytest.approx(math.sqrt(math.pi))
    assert standard_scale(FamilySpec.laguerre(0.0), 2) == pytest.approx(1.0)


def test_kind_enum_roundtrip():
    assert FamilySpec("laguerre", nu=0.5).kind is Kind.LAGUERRE
