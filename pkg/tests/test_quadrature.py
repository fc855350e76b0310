import math
import warnings

import numpy as np
import pytest

from ortholab.orthopoly import FamilySpec, eval_orthonormal, jacobi_tau, standard_scale
from ortholab.quadrature import (
    CoefficientSeries,
    EllipseContour,
    HermiteTheta,
    LaguerreTheta,
    PlanarGridSpec,
    Scheme,
    TruncationWarning,
    chebyshev_boundary_gram,
    ellipse_contour_integral,
    fourier_coefficients,
    gauss_legendre,
    gauss_rule,
    planar_weighted_integral,
)
from ortholab.specfun import DomainError
from ortholab.summability import (
    coefficient_gate,
    hermite_generating_coefficients,
    laguerre_generating_coefficients,
)

PERIMETER_E2 = 4.725203313044369712  # mpmath arc length, semi-axes of E_2

FAMILIES = [FamilySpec.hermite(), FamilySpec.laguerre(0.5), FamilySpec.jacobi(0.5, -0.3),
            FamilySpec.gegenbauer(1.0), FamilySpec.chebyshev_t()]


class TestGaussRule:
    def test_one_point(self):
        r = gauss_rule(FamilySpec.hermite(), 1)
        assert r.nodes[0] == 0.0 and r.weights[0] == pytest.approx(math.sqrt(math.pi))
        r = gauss_rule(FamilySpec.laguerre(1.5), 1)
        assert r.nodes[0] == pytest.approx(2.5) and r.weights[0] == pytest.approx(math.gamma(2.5))

    def test_jacobi_mass(self):
        assert gauss_rule(FamilySpec.jacobi(0.5, 0.5), 20).weights.sum() == pytest.approx(
            math.pi / 2, rel=1e-12)

    @pytest.mark.parametrize("fam", FAMILIES)
    def test_exact_for_degree_2n_minus_1(self, fam):
        n = 12
        r = gauss_rule(fam, n)
        phi = np.array([eval_orthonormal(fam, k, r.nodes) for k in range(n)])
        gram = (phi * r.weights) @ phi.T
        assert np.allclose(gram, np.eye(n), atol=1e-10)

    def test_order_limits(self):
        with pytest.raises(ValueError):
            gauss_rule(FamilySpec.hermite(), 0)
        with pytest.raises(ValueError):
            gauss_rule(FamilySpec.hermite(), 257)

    def test_legendre_interval(self):
        x, w = gauss_legendre(10, 2.0, 5.0)
        assert w.sum() == pytest.approx(3.0) and np.all((x > 2) & (x < 5))
        assert np.sum(w * x**3) == pytest.approx((5**4 - 2**4) / 4, rel=1e-13)


class TestFourierCoefficients:
    @pytest.mark.parametrize("fam", FAMILIES)
    def test_orthonormal_inputs(self, fam):
        for j in (0, 3, 11, 20):
            c = fourier_coefficients(lambda x: eval_orthonormal(fam, j, x), fam, 20, 64)
            assert np.allclose(c.values, np.eye(21)[j], atol=1e-12)

    def test_hermite_generating(self):
        t = 0.4
        c = fourier_coefficients(lambda x: np.exp(2 * x * t - t * t), FamilySpec.hermite(), 40, 96)
        exact = hermite_generating_coefficients(t, 40)
        assert np.allclose(c.values[:15], exact[:15], rtol=1e-11)
        assert coefficient_gate(c.values, exact)

    def test_laguerre_generating(self):
        t, nu = 0.5, 0.5
        fam = FamilySpec.laguerre(nu)
        c = fourier_coefficients(lambda x: (1 - t) ** (-nu - 1) * np.exp(-x * t / (1 - t)), fam, 40, 96)
        exact = laguerre_generating_coefficients(t, nu, 40)
        assert np.allclose(c.values[:20], exact[:20], rtol=1e-9)
        assert coefficient_gate(c.values, exact)

    def test_series_validation(self):
        with pytest.raises(ValueError):
            CoefficientSeries(FamilySpec.hermite(), [])
        with pytest.raises(ValueError):
            CoefficientSeries(FamilySpec.hermite(), [1.0, np.nan])
        assert CoefficientSeries(FamilySpec.hermite(), [1, 2, 3]).K == 2


class TestPlanar:
    def test_hermite_unit_mass(self):
        theta = 2.0
        w = HermiteTheta(theta)
        val = planar_weighted_integral(lambda z: np.full(z.shape, 1 / math.sqrt(math.pi)), w,
                                       w.default_grid())
        assert 2 / math.sqrt(math.pi * (theta**2 - 1)) * val.real == pytest.approx(1.0, rel=1e-13)

    def test_zero_integrand(self):
        w = HermiteTheta(2.0)
        assert planar_weighted_integral(lambda z: 0 * z, w, w.default_grid()) == 0

    def test_hermite_degree_one(self):
        theta = 2.0
        w = HermiteTheta(theta)
        val = planar_weighted_integral(lambda z: np.abs(2 * z) ** 2, w, w.default_grid(1))
        assert 2 / math.sqrt(theta**2 - 1) * val.real == pytest.approx(4 * math.pi, rel=1e-12)

    def test_total_mass(self):
        w = HermiteTheta(3.0)
        val = planar_weighted_integral(lambda z: np.ones(z.shape), w, w.default_grid())
        assert val.real == pytest.approx(w.total_mass(), rel=1e-13)

    @pytest.mark.parametrize("theta", [1.5, 3.0, 8.0])
    def test_laguerre_constant(self, theta):
        nu = 0.5
        w = LaguerreTheta(theta, nu)
        val = planar_weighted_integral(lambda z: np.ones(z.shape), w, w.default_grid())
        pref = 2 * theta ** (-nu / 2) / (math.pi * (theta - 1))
        assert pref * val.real == pytest.approx(math.gamma(nu + 1), rel=1e-10)

    def test_laguerre_theta_limit(self):
        with pytest.raises(DomainError):
            LaguerreTheta(9.0, 0.5)

    def test_default_tails_negligible(self):
        assert HermiteTheta(4.0).tail_fraction(HermiteTheta(4.0).default_grid()) < 1e-14
        lw = LaguerreTheta(2.0, 1.5)
        assert lw.tail_fraction(lw.default_grid()) < 1e-14

    def test_truncation_warning(self):
        w = HermiteTheta(2.0)
        with pytest.warns(TruncationWarning):
            planar_weighted_integral(lambda z: np.ones(z.shape), w,
                                     PlanarGridSpec(Scheme.CARTESIAN, 1.0, 32))

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            PlanarGridSpec(Scheme.CARTESIAN, -1.0, 32)
        with pytest.raises(ValueError):
            PlanarGridSpec(Scheme.POLAR, 1.0, 1)
        assert PlanarGridSpec(Scheme.POLAR, 1.0, 64, 64).refined().resolution == 128


class TestEllipse:
    @pytest.mark.parametrize("theta", [1.5, 2.0, 4.0])
    def test_arcsine_weight(self, theta):
        c = EllipseContour(theta)
        val = ellipse_contour_integral(lambda z: np.ones(z.shape), c,
                                       lambda z: np.abs(z * z - 1) ** -0.5)
        assert val.real == pytest.approx(2 * math.pi, rel=1e-13)

    def test_perimeter(self):
        val = ellipse_contour_integral(lambda z: np.ones(z.shape), EllipseContour(2.0))
        assert val.real == pytest.approx(PERIMETER_E2, rel=1e-13)

    def test_nodes_on_boundary(self):
        c = EllipseContour(3.0, 64)
        z, _ = c.nodes()
        s = math.sqrt(3.0)
        assert np.allclose(np.abs(z - 1) + np.abs(z + 1), s + 1 / s, rtol=1e-14)

    def test_homogeneity(self):
        c = EllipseContour(2.0)
        f = lambda z: np.exp(z)
        base = ellipse_contour_integral(lambda z: np.abs(f(z)) ** 2, c)
        scaled = ellipse_contour_integral(lambda z: np.abs((2 - 1j) * f(z)) ** 2, c)
        assert scaled == pytest.approx(5 * base, rel=1e-14)

    def test_node_count(self):
        with pytest.raises(ValueError):
            EllipseContour(2.0, 100)

    @pytest.mark.parametrize("k, m, want", [(0, 0, 4.0), (3, 3, 8.125), (2, 5, 0.0)])
    def test_gram_values(self, k, m, want):
        assert chebyshev_boundary_gram(2.0, k, m) == pytest.approx(want, rel=1e-12, abs=1e-12)

    def test_tilde_is_twice_standard(self):
        assert standard_scale(FamilySpec.chebyshev_t(), 3) == pytest.approx(math.sqrt(math.pi / 2))
