"""Property-based checks of invariants that hold for every admissible input."""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ortholab.kernels import (
    EllipseDomain,
    KernelKind,
    KernelSpec,
    factorization_residual,
    gram_matrix,
    kernel_closed,
    kernel_series,
)
from ortholab.orthopoly import FamilySpec, total_mass
from ortholab.quadrature import (
    CoefficientSeries,
    EllipseContour,
    ellipse_contour_integral,
    gauss_rule,
)
from ortholab.specfun import SeriesControl, appell_f4, gauss_2f1
from ortholab.summability import (
    Verdict,
    VerificationReport,
    radius_estimate,
    series_verdict,
    weighted_sum,
)

thetas = st.floats(1.2, 8.0)
small = st.floats(-1.0, 1.0)
points = st.builds(complex, small, small)
params = st.floats(0.1, 3.0)

families = st.one_of(
    st.just(FamilySpec.hermite()),
    st.builds(FamilySpec.laguerre, st.floats(-0.9, 4.0)),
    st.builds(FamilySpec.jacobi, st.floats(-0.9, 3.0), st.floats(-0.9, 3.0)),
    st.builds(FamilySpec.gegenbauer, st.floats(0.05, 4.0)),
    st.just(FamilySpec.chebyshev_t()),
)


@given(st.integers(8, 10_000), st.floats(1e-18, 0.5), st.integers(2, 10))
def test_series_control_accepts_valid(max_terms, rel_tol, run):
    ctrl = SeriesControl(max_terms, rel_tol, run)
    assert ctrl.max_terms == max_terms


@given(st.one_of(st.integers(-5, 7).map(lambda n: dict(max_terms=n)),
                 st.sampled_from([0.0, 1.0, 2.0, -1e-3]).map(lambda r: dict(rel_tol=r)),
                 st.integers(-3, 1).map(lambda c: dict(consecutive_small=c))))
def test_series_control_rejects_invalid(kwargs):
    with pytest.raises(ValueError):
        SeriesControl(**kwargs)


@given(params, params, params, params, st.floats(0.0, 0.2), st.floats(0.0, 0.2))
def test_appell_f4_symmetric_in_variable_pairs(a, b, c1, c2, t, s):
    lhs = appell_f4(a, b, c1, c2, t, s)
    rhs = appell_f4(a, b, c2, c1, s, t)
    assert abs(lhs - rhs) <= 1e-12 * abs(lhs)


@given(params, params, st.builds(complex, st.floats(-0.6, 0.6), st.floats(-0.6, 0.6)))
def test_gauss_2f1_binomial(a, b, t):
    assume(abs(t) <= 0.8)
    assert gauss_2f1(a, b, b, t) == pytest.approx((1 - t) ** (-a), rel=1e-12)


@given(thetas, st.floats(0.05, 0.99), st.integers(0, 2**32 - 1))
def test_ellipse_sample_contained(theta, shrink, seed):
    dom = EllipseDomain(theta)
    assert dom.contains(dom.sample(np.random.default_rng(seed), 32, shrink)).all()


@given(thetas, st.floats(1.001, 2.0))
def test_scaled_boundary_outside(theta, scale):
    z, _ = EllipseContour(theta, 64).nodes()
    assert not EllipseDomain(theta).contains(scale * z).any()


@given(st.lists(st.builds(complex, small, small), min_size=1, max_size=40), thetas)
def test_partial_sums_nondecreasing(values, theta):
    s = weighted_sum(CoefficientSeries(FamilySpec.chebyshev_t(), np.array(values)), theta)
    assert np.all(np.diff(s) >= 0)


@given(st.floats(0.1, 0.9))
def test_geometric_radius_above_one(r):
    est = radius_estimate(CoefficientSeries(FamilySpec.chebyshev_t(), r ** np.arange(65.0)))
    assert est.status == "finite" and est.value == pytest.approx(r**-2, rel=1e-8)
    assert est.value > 1


@given(st.floats(0.2, 0.8), st.floats(0.5, 0.8))
def test_verdict_inside_threshold(r, fraction):
    c = CoefficientSeries(FamilySpec.chebyshev_t(), r ** np.arange(65.0))
    assert series_verdict(c, 1 + fraction * (r**-2 - 1)) is Verdict.CONVERGED


@given(st.builds(complex, st.floats(-10, 10), st.floats(-10, 10)),
       st.builds(complex, st.floats(-10, 10), st.floats(-10, 10)),
       st.floats(1e-12, 1.0))
def test_report_pass_rule(computed, expected, tol):
    r = VerificationReport.compare("p", computed, expected, tol)
    err = abs(computed - expected)
    want = err <= tol if expected == 0 else err / abs(expected) <= tol
    assert r.passed == want


@settings(max_examples=40)
@given(families, st.integers(1, 120))
def test_gauss_weights_sum_to_mass(family, n):
    rule = gauss_rule(family, n)
    assert np.all(rule.weights > 0)
    assert rule.weights.sum() == pytest.approx(total_mass(family), rel=1e-12)


@given(thetas, st.builds(complex, small, small))
def test_contour_integral_linear(theta, c):
    contour = EllipseContour(theta, 64)
    g = lambda z: z * z + 1
    assert ellipse_contour_integral(lambda z: c * g(z), contour) == pytest.approx(
        c * ellipse_contour_integral(g, contour), rel=1e-12, abs=1e-14)


@given(st.floats(1.2, 6.0), st.floats(0.0, 1.0))
def test_perimeter_grows_with_theta(theta, step):
    one = lambda z: np.ones_like(z)
    inner = ellipse_contour_integral(one, EllipseContour(theta, 256)).real
    outer = ellipse_contour_integral(one, EllipseContour(theta + 0.1 + step, 256)).real
    assert inner < outer


@given(thetas, points, points)
def test_mehler_hermitian(theta, z, u):
    spec = KernelSpec(KernelKind.HERMITE_MEHLER, theta)
    assert kernel_closed(spec, z, u) == pytest.approx(
        np.conj(kernel_closed(spec, u, z)), rel=1e-13)


@settings(max_examples=30)
@given(families, st.floats(1.5, 6.0), points, points)
def test_bilinear_series_hermitian(family, theta, z, u):
    a = kernel_series(family, theta, z, u, 20).value
    b = kernel_series(family, theta, u, z, 20).value
    assert a == pytest.approx(np.conj(b), rel=1e-11, abs=1e-14)


@given(st.sampled_from(["hermite", "laguerre"]), thetas, points, points, st.floats(-0.5, 3.0))
def test_factorization(kind, theta, z, u, nu):
    assert factorization_residual(kind, theta, z, u, nu) <= 1e-12


@settings(max_examples=30)
@given(st.floats(1.3, 6.0), st.lists(points, min_size=2, max_size=8, unique=True))
def test_mehler_gram_psd(theta, pts):
    G = gram_matrix(KernelSpec(KernelKind.HERMITE_MEHLER, theta), pts)
    np.testing.assert_allclose(G, G.conj().T, rtol=0, atol=1e-14 * np.abs(G).max())
    assert np.linalg.eigvalsh(G)[0] >= -1e-10 * np.trace(G).real


@settings(max_examples=30)
@given(st.floats(1.3, 6.0), st.floats(0.1, 3.0),
       st.lists(st.builds(complex, st.floats(-0.5, 0.5), st.floats(-0.5, 0.5)),
                min_size=2, max_size=8, unique=True))
def test_bergman_selberg_gram_psd(theta, lam, pts):
    G = gram_matrix(KernelSpec(KernelKind.BERGMAN_SELBERG, theta, lam=lam), pts)
    assert np.linalg.eigvalsh(G)[0] >= -1e-10 * np.trace(G).real
