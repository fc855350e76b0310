"""Geometric-weight summability of orthogonal expansions.

The central quantity is S(theta) = sum_k |f_k|^2 theta^k. For Hermite and
Laguerre expansions it equals a weighted area integral of |f|^2 over the
complex plane; for Jacobi-type expansions it is equivalent (up to constants)
to the squared boundary norm of f on the ellipse E_theta.

Coefficients computed by quadrature carry an absolute noise floor near
1e-14. Multiplied by theta^k that noise would swamp any tail analysis, so
verdicts and radius estimates only look at *resolved* coefficients, those
above ``noise_rel * max|f_k|``.
"""
from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import special

from . import orthopoly
from .orthopoly import FamilySpec, Kind
from .quadrature import (
    CoefficientSeries,
    EllipseContour,
    HermiteTheta,
    LaguerreTheta,
    PlanarGridSpec,
    Scheme,
    ellipse_contour_integral,
    fourier_coefficients,
    planar_weighted_integral,
)
from .specfun import DomainError

__all__ = [
    "CoefficientSeries",
    "Verdict",
    "VerificationReport",
    "SummabilityReport",
    "RadiusEstimate",
    "weighted_sum",
    "resolved_indices",
    "series_verdict",
    "radius_estimate",
    "analyze",
    "hermite_generating_coefficients",
    "laguerre_generating_coefficients",
    "chebyshev_pole_coefficients",
    "coefficient_gate",
    "hermite_norm_identity",
    "laguerre_norm_identity",
    "orthogonality_matrix",
    "holomorphy_defect",
    "JacobiMembershipReport",
    "jacobi_membership_report",
]

NOISE_REL = 1e-10
TAIL_TERMS = 8
RATIO_MARGIN = 5e-3


class Verdict(str, enum.Enum):
    CONVERGED = "Converged"
    DIVERGING = "Diverging"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class VerificationReport:
    """Outcome of one identity check.

    ``passed`` is ``rel_err <= tolerance``, or ``abs_err <= tolerance`` when
    the expected value is zero.
    """

    name: str
    computed: complex
    expected: complex
    abs_err: float
    rel_err: float
    tolerance: float
    passed: bool
    runtime_ms: int = 0
    notes: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, name: str, computed, expected, tolerance: float,
                runtime_ms: int = 0, **notes) -> "VerificationReport":
        computed, expected = complex(computed), complex(expected)
        abs_err = abs(computed - expected)
        rel_err = abs_err / abs(expected) if expected != 0 else math.inf
        if not math.isfinite(abs_err):
            ok = False
        elif expected == 0:
            ok = abs_err <= tolerance
        else:
            ok = rel_err <= tolerance
        return cls(name, computed, expected, abs_err, rel_err, tolerance, bool(ok),
                   int(runtime_ms), dict(notes))

    def failed(self, **notes) -> "VerificationReport":
        """Copy with ``passed = False`` and extra notes."""
        merged = {**self.notes, **notes}
        return VerificationReport(self.name, self.computed, self.expected, self.abs_err,
                                  self.rel_err, self.tolerance, False, self.runtime_ms, merged)


# --- sums and verdicts ------------------------------------------------------


def weighted_sum(coeffs: CoefficientSeries, theta: float, K: int | None = None) -> np.ndarray:
    """Partial sums S_j = sum_{k<=j} |f_k|^2 theta^k for j = 0..K.

    Terms beyond the floating-point range become ``inf`` (read as Diverging).
    """
    if not theta > 1:
        raise DomainError(f"theta must exceed 1, got {theta}")
    K = coeffs.K if K is None else K
    if K > coeffs.K:
        raise ValueError(f"K = {K} exceeds the {coeffs.K + 1} available coefficients")
    mags = np.abs(coeffs.values[: K + 1])
    with np.errstate(divide="ignore", over="ignore"):
        log_terms = 2.0 * np.log(mags) + np.arange(K + 1) * math.log(theta)
        terms = np.exp(log_terms)
    return np.cumsum(terms)


def resolved_indices(values, noise_rel: float = NOISE_REL) -> np.ndarray:
    """Indices of coefficients above the relative noise floor."""
    mags = np.abs(np.asarray(values))
    top = mags.max()
    if top == 0:
        return np.array([], dtype=int)
    return np.flatnonzero(mags > noise_rel * top)


def _log_terms(values, idx, theta):
    return 2.0 * np.log(np.abs(np.asarray(values)[idx])) + idx * math.log(theta)


def series_verdict(coeffs: CoefficientSeries, theta: float,
                   noise_rel: float = NOISE_REL) -> Verdict:
    """Decide convergence of sum |f_k|^2 theta^k from the resolved tail.

    Terms are summed in consecutive pairs, which absorbs parity zeros and
    the two-step patterns of non-symmetric families. Ratios of the last eight
    nonzero pair blocks are fitted to r_j = L + c/(j+1) + d/(j+1)^2, which captures the
    algebraic corrections of the Chebyshev, Hermite and Laguerre generating
    functions. L < 1 - margin with a falling final block is Converged;
    L > 1 + margin with a rising final block is Diverging. Blocks that are
    still rising at the end of the data while L < 1 give Inconclusive, as
    do rising blocks of a series whose decay is steepening (infinite
    radius). With too few resolved blocks the verdict compares theta with
    :func:`radius_estimate` instead.
    """
    blocks = _pair_blocks(coeffs.values, noise_rel)
    if blocks.size == 0:
        return Verdict.CONVERGED
    with np.errstate(divide="ignore"):
        log_blocks = np.log(blocks) + 2 * np.arange(blocks.size) * math.log(theta)
    if log_blocks.max() > 700:
        return Verdict.DIVERGING
    blocks = np.exp(log_blocks)
    j = np.flatnonzero(blocks)
    if j.size < TAIL_TERMS + 1:
        return _verdict_from_radius(coeffs, theta, noise_rel)
    j = j[-(TAIL_TERMS + 1):]
    log_ratio = np.diff(np.log(blocks[j])) / np.diff(j)
    x = 1.0 / (j[:-1] + 1.0)
    design = np.column_stack([np.ones_like(x), x, x * x])
    (limit, _, _), *_ = np.linalg.lstsq(design, np.exp(log_ratio), rcond=None)
    margin = 2 * RATIO_MARGIN
    # the fitted limit decides; the newest ratio must sit on the same side of 1
    if limit > 1 + margin and log_ratio[-1] > 0:
        # super-geometric decay (infinite radius) only looks rising pre-asymptotically
        if _radius_status(coeffs, noise_rel) == "infinite":
            return Verdict.INCONCLUSIVE
        return Verdict.DIVERGING
    if limit < 1 - margin and log_ratio[-1] < 0:
        return Verdict.CONVERGED
    return Verdict.INCONCLUSIVE


def _radius_status(coeffs, noise_rel):
    try:
        return radius_estimate(coeffs, noise_rel).status
    except ValueError:
        return "finite-expansion"


def _verdict_from_radius(coeffs, theta, noise_rel):
    try:
        est = radius_estimate(coeffs, noise_rel)
    except ValueError:
        # fewer than 16 nonzero coefficients: a finite expansion
        return Verdict.CONVERGED
    if est.status == "infinite":
        return Verdict.CONVERGED
    if est.status != "finite":
        return Verdict.INCONCLUSIVE
    if theta < est.value * (1 - 2 * RATIO_MARGIN):
        return Verdict.CONVERGED
    if theta > est.value * (1 + 2 * RATIO_MARGIN):
        return Verdict.DIVERGING
    return Verdict.INCONCLUSIVE


@dataclass(frozen=True)
class RadiusEstimate:
    """theta* = 1 / limsup |f_k|^(2/k); ``status`` is finite, infinite or inconclusive."""

    value: float
    status: str
    n_used: int


def _pair_blocks(values, noise_rel):
    """Sums |f_{2j}|^2 + |f_{2j+1}|^2 over the resolved range, noise set to zero.

    The range is cut to an even length so the last block is never half empty.
    """
    idx = resolved_indices(values, noise_rel)
    if idx.size == 0:
        return np.zeros(0)
    top = int(idx[-1]) + 1
    mags = np.abs(np.asarray(values)[:top])
    mags = np.where(mags > noise_rel * mags.max(), mags, 0.0)
    if top > 1:
        mags = mags[: top // 2 * 2]
    else:
        mags = np.append(mags, 0.0)
    sq = mags * mags
    return sq[0::2] + sq[1::2]


def radius_estimate(coeffs: CoefficientSeries, noise_rel: float = NOISE_REL) -> RadiusEstimate:
    """Convergence threshold theta* = 1 / limsup |f_k|^(2/k).

    The logs of the pair sums |f_2j|^2 + |f_2j+1|^2 over the last half of the
    resolved range are fitted to A + s j + b log j, and theta* = exp(-s / 2).
    The fit cancels the constant and power-of-k factors that bias a direct
    |f_k|^(2/k) read-out at moderate k. Decay that keeps steepening (the
    late-half rate beats the early-half rate by more than 20 %) or that
    reaches the noise floor within eight coefficients signals faster than
    geometric decay and returns ``inf``.
    """
    nonzero = np.count_nonzero(np.abs(coeffs.values))
    if nonzero < 16:
        raise ValueError(f"radius_estimate needs at least 16 nonzero coefficients, got {nonzero}")
    blocks = _pair_blocks(coeffs.values, noise_rel)
    j = np.flatnonzero(blocks)
    j = j[j >= 1]  # block 0 carries normalisation quirks such as the Chebyshev f_0
    if j.size < 4:
        return RadiusEstimate(math.inf, "infinite", int(j.size))
    tail = j[j >= j[-1] // 2]
    if tail.size < 4:
        tail = j[-4:]
    y = np.log(blocks[tail])
    half = tail.size // 2
    s_early = np.polyfit(tail[: half + 1], y[: half + 1], 1)[0]
    s_late = np.polyfit(tail[half - 1:] if tail.size < 6 else tail[half:],
                        y[half - 1:] if tail.size < 6 else y[half:], 1)[0]
    if s_early - s_late > 2 * math.log(1.2):
        return RadiusEstimate(math.inf, "infinite", int(tail.size))
    # log B_j = A + s j + b log j absorbs algebraic factors k^b in |f_k|^2
    x = tail.astype(float)
    design = np.column_stack([np.ones_like(x), x, np.log(x)] if tail.size >= 5
                             else [np.ones_like(x), x])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    slope = coef[1]
    resid = y - design @ coef
    if np.max(np.abs(resid)) > 2.0 or slope >= 0:
        return RadiusEstimate(math.nan, "inconclusive", int(tail.size))
    return RadiusEstimate(float(math.exp(-slope / 2)), "finite", int(tail.size))


@dataclass
class SummabilityReport:
    theta_grid: list
    partial_sums: np.ndarray  # shape (len(theta_grid), K + 1)
    verdicts: list
    radius: RadiusEstimate
    family: FamilySpec
    resolved_K: int


def analyze(coeffs: CoefficientSeries, theta_grid: Sequence[float],
            noise_rel: float = NOISE_REL) -> SummabilityReport:
    """Partial sums, per-theta verdicts and the threshold estimate."""
    idx = resolved_indices(coeffs.values, noise_rel)
    top = int(idx[-1]) if idx.size else 0
    sums = np.array([weighted_sum(coeffs, th, top) for th in theta_grid])
    verdicts = [series_verdict(coeffs, th, noise_rel) for th in theta_grid]
    try:
        radius = radius_estimate(coeffs, noise_rel)
    except ValueError:
        radius = RadiusEstimate(math.nan, "inconclusive", 0)
    return SummabilityReport(list(theta_grid), sums, verdicts, radius, coeffs.family, top)


# --- test families ----------------------------------------------------------


def hermite_generating_coefficients(t: float, K: int) -> np.ndarray:
    """Exact f_k of exp(2xt - t^2): t^k sqrt(sqrt(pi) 2^k / k!)."""
    k = np.arange(K + 1)
    if t == 0:
        return (k == 0) * math.pi**0.25
    log_mag = k * math.log(abs(t)) + 0.5 * (0.5 * math.log(math.pi) + k * math.log(2.0)
                                            - special.gammaln(k + 1))
    return np.sign(t) ** k * np.exp(log_mag)


def laguerre_generating_coefficients(t: float, nu: float, K: int) -> np.ndarray:
    """Exact f_k of (1-t)^(-nu-1) exp(-xt/(1-t)): t^k sqrt(Gamma(k+nu+1)/k!)."""
    k = np.arange(K + 1)
    scale = np.exp(0.5 * (special.gammaln(k + nu + 1) - special.gammaln(k + 1)))
    return float(t) ** k * scale


def chebyshev_pole_coefficients(t: float, K: int) -> np.ndarray:
    """Exact f_k of (1-t^2)/(1-2tx+t^2) in orthonormal Chebyshev polynomials."""
    k = np.arange(K + 1)
    out = math.sqrt(2 * math.pi) * float(t) ** k
    out[0] = math.sqrt(math.pi)
    return out


def coefficient_gate(computed, exact, rel_tol: float = 1e-9, abs_tol: float = 1e-13) -> bool:
    """Quadrature coefficients agree with closed forms: |d| <= rel |f_k| + abs max|f|."""
    computed, exact = np.asarray(computed), np.asarray(exact)
    bound = rel_tol * np.abs(exact) + abs_tol * np.abs(exact).max()
    return bool(np.all(np.abs(computed - exact) <= bound))


def _elapsed_ms(t0):
    return int(round(1000 * (time.perf_counter() - t0)))


# --- Hermite / Laguerre norm identities ---------------------------------------


def hermite_norm_identity(t: float, theta: float, grid: PlanarGridSpec | None = None,
                          K: int = 60, tol: float = 1e-6) -> VerificationReport:
    """Coefficient sum vs area integral for f(x) = exp(2xt - t^2).

    Sum side: sum_{k<=K} |f_k|^2 theta^k with the exact coefficients. Integral
    side: 2/sqrt(pi(theta^2-1)) int |f|^2 exp[-2(x^2/(theta+1) + y^2/(theta-1))].
    """
    if not 1 < theta <= 8:
        raise DomainError(f"theta must lie in (1, 8], got {theta}")
    if abs(t) > 0.6:
        raise DomainError(f"|t| must not exceed 0.6, got {t}")
    t0 = time.perf_counter()
    weight = HermiteTheta(theta)
    if grid is None:
        shift = abs(t) * (theta + 1)
        base = weight.default_grid(K, resolution=256)
        grid = PlanarGridSpec(Scheme.CARTESIAN, base.extent + shift, base.resolution)
    exact = hermite_generating_coefficients(t, K)
    quad = fourier_coefficients(lambda x: np.exp(2 * x * t - t * t), FamilySpec.hermite(),
                                K, min(256, 2 * K + 16))
    gate = coefficient_gate(quad.values, exact)
    sum_side = float(np.sum(exact**2 * theta ** np.arange(K + 1, dtype=float)))
    integral = planar_weighted_integral(lambda z: np.abs(np.exp(2 * z * t - t * t)) ** 2,
                                        weight, grid)
    integral_side = 2.0 / math.sqrt(math.pi * (theta**2 - 1)) * integral.real
    rep = VerificationReport.compare(
        f"hermite_norm_identity(t={t:g}, theta={theta:g})", integral_side, sum_side, tol,
        _elapsed_ms(t0), closed_form=math.sqrt(math.pi) * math.exp(2 * t * t * theta),
        coefficient_gate=gate, grid_extent=grid.extent, grid_resolution=grid.resolution,
    )
    return rep if gate else rep.failed(reason="quadrature coefficients failed the gate")


def laguerre_norm_identity(t: float, theta: float, nu: float,
                           grid: PlanarGridSpec | None = None, K: int = 64,
                           tol: float = 1e-4) -> VerificationReport:
    """Coefficient sum vs Bessel-weighted area integral for the Laguerre generating function.

    f(x) = (1-t)^(-nu-1) exp(-xt/(1-t)), with f_k = t^k sqrt(Gamma(k+nu+1)/k!).
    When t^2 theta >= 1 the sum diverges; the report then carries
    ``sum_verdict = Diverging`` and fails.
    """
    if not 1 < theta <= 8:
        raise DomainError(f"theta must lie in (1, 8], got {theta}")
    if not 0 <= abs(t) < 1:
        raise DomainError(f"|t| must be below 1, got {t}")
    t0 = time.perf_counter()
    family = FamilySpec.laguerre(nu)
    weight = LaguerreTheta(theta, nu)
    c = t / (1 - t)
    f = lambda z: (1 - t) ** (-nu - 1) * np.exp(-z * c)

    exact = laguerre_generating_coefficients(t, nu, K)
    verdict = series_verdict(CoefficientSeries(family, exact), theta)
    quad = fourier_coefficients(f, family, K, min(256, 2 * K + 16))
    gate = coefficient_gate(quad.values, exact)

    # slowest radial decay of |f|^2 * weight over all directions
    rate = weight.decay - abs(weight.growth - 2 * c)
    closed = (math.gamma(nu + 1) * (1 - t * t * theta) ** (-nu - 1)
              if t * t * theta < 1 else math.inf)
    pref = 2 * theta ** (-nu / 2) / (math.pi * (theta - 1))
    sum_side = float(np.sum(np.abs(exact) ** 2 * theta ** np.arange(K + 1, dtype=float)))

    if rate <= 0:
        integral_side = math.inf
    else:
        if grid is None:
            grid = PlanarGridSpec(Scheme.POLAR, 40.0 / rate, 256, 512)
        density = _LaguerreNormDensity(weight, c, -2 * (nu + 1) * math.log(1 - t), rate)
        integral_side = pref * planar_weighted_integral(lambda z: 1.0, density, grid).real
    notes = dict(closed_form=closed, sum_verdict=verdict.value, coefficient_gate=gate)
    if grid is not None:
        notes.update(grid_extent=grid.extent, grid_resolution=grid.resolution)
    name = f"laguerre_norm_identity(t={t:g}, theta={theta:g}, nu={nu:g})"
    rep = VerificationReport.compare(name, integral_side, sum_side, tol, _elapsed_ms(t0), **notes)
    if verdict is not Verdict.CONVERGED:
        return rep.failed(reason="coefficient sum does not converge")
    if not gate:
        return rep.failed(reason="quadrature coefficients failed the gate")
    return rep


@dataclass(frozen=True)
class _LaguerreNormDensity:
    """|f|^2 times the Laguerre area weight, assembled in log space to avoid overflow."""

    weight: LaguerreTheta
    c: float
    log_scale: float
    rate: float

    def __call__(self, z):
        r = np.maximum(np.abs(z), 1e-300)
        x = self.weight.decay * r
        log_val = (self.log_scale - 2 * self.c * z.real + self.weight.growth * z.real
                   + self.weight.nu * np.log(r) + np.log(special.kve(abs(self.weight.nu), x)) - x)
        return np.exp(log_val)

    def tail_fraction(self, grid: PlanarGridSpec) -> float:
        p = self.weight.nu + 1.5
        return float(special.gammaincc(p, self.rate * grid.extent))


def orthogonality_matrix(kind: str, theta: float, nu: float = 0.0, k_max: int = 4,
                         grid: PlanarGridSpec | None = None, diag_tol: float | None = None,
                         offdiag_tol: float = 1e-8) -> list[list[VerificationReport]]:
    """Complex-plane orthogonality of the standard Hermite or Laguerre polynomials.

    Entry (k, m) compares the weighted area integral of P_k conj(P_m) against
    delta_km pi (2 theta)^k k! (Hermite) or delta_km Gamma(k+nu+1) theta^k / k!
    (Laguerre). Off-diagonal entries pass when their magnitude is at most
    ``offdiag_tol`` times the largest expected diagonal value.
    """
    kind = Kind(kind)
    if not 1 < theta <= 8:
        raise DomainError(f"theta must lie in (1, 8], got {theta}")
    if kind is Kind.HERMITE:
        if k_max > 6:
            raise ValueError("Hermite orthogonality is checked for k_max <= 6")
        family = FamilySpec.hermite()
        weight = HermiteTheta(theta)
        pref = 2.0 / math.sqrt(theta**2 - 1)
        expected = [math.pi * (2 * theta) ** k * math.factorial(k) for k in range(k_max + 1)]
        diag_tol = 1e-6 if diag_tol is None else diag_tol
        grid = grid or weight.default_grid(k_max, resolution=192)
    elif kind is Kind.LAGUERRE:
        if k_max > 5:
            raise ValueError("Laguerre orthogonality is checked for k_max <= 5")
        family = FamilySpec.laguerre(nu)
        weight = LaguerreTheta(theta, nu)
        pref = 2 * theta ** (-nu / 2) / (math.pi * (theta - 1))
        expected = [math.exp(math.lgamma(k + nu + 1) - math.lgamma(k + 1)) * theta**k
                    for k in range(k_max + 1)]
        diag_tol = 1e-4 if diag_tol is None else diag_tol
        grid = grid or weight.default_grid(k_max)
    else:
        raise ValueError("orthogonality_matrix supports hermite and laguerre")

    scales = [orthopoly.standard_scale(family, k) for k in range(k_max + 1)]
    last = [None, None]  # the most recent grid and its polynomial values

    def std_polys(z):
        if last[0] is not z:
            phi = orthopoly.eval_orthonormal_all(family, k_max, z)
            last[:] = [z, [scales[k] * phi[k] for k in range(k_max + 1)]]
        return last[1]

    top = max(expected)
    out = []
    for k in range(k_max + 1):
        row = []
        for m in range(k_max + 1):
            t0 = time.perf_counter()
            val = pref * planar_weighted_integral(
                lambda z: std_polys(z)[k] * np.conj(std_polys(z)[m]), weight, grid)
            name = f"{kind.value}_orthogonality(k={k}, m={m}, theta={theta:g})"
            if k == m:
                rep = VerificationReport.compare(name, val, expected[k], diag_tol,
                                                 _elapsed_ms(t0))
            else:
                rep = VerificationReport.compare(name, val, 0.0, offdiag_tol * top,
                                                 _elapsed_ms(t0))
            row.append(rep)
        out.append(row)
    return out


# --- Jacobi-type membership -----------------------------------------------------


def holomorphy_defect(f: Callable, theta: float, n_nodes: int = 1024, n_coeffs: int = 16) -> float:
    """How far f is from being holomorphic in E_theta.

    g(w) = f((w + 1/w)/2) is holomorphic in 1 < |w| < sqrt(theta) exactly when f
    is holomorphic in E_theta minus [-1, 1]; then its Laurent coefficients do not
    depend on the circle they are computed on. Returns the largest gap between
    coefficients taken on |w| = 1 and on |w| = sqrt(theta), scaled by the
    largest coefficient magnitude on the outer circle.
    """
    phi = 2 * math.pi * np.arange(n_nodes) / n_nodes
    coeffs = []
    for r in (1.0, math.sqrt(theta)):
        w = r * np.exp(1j * phi)
        g = np.asarray(f(0.5 * (w + 1 / w)), dtype=complex)
        c = np.fft.fft(g) / n_nodes
        j = np.concatenate([np.arange(n_coeffs + 1), np.arange(-n_coeffs, 0)])
        cj = np.concatenate([c[: n_coeffs + 1], c[-n_coeffs:]])
        coeffs.append((cj, j, r))
    (c_in, j, _), (c_out, _, r_out) = coeffs
    # both estimate the same Laurent coefficient a_j; compare a_j r_out^j
    scale = r_out ** j.astype(float)
    a_in = c_in * scale
    a_out = c_out
    return float(np.max(np.abs(a_in - a_out)) / max(np.max(np.abs(a_out)), 1e-300))


@dataclass
class JacobiMembershipReport:
    family: FamilySpec
    theta: float
    coefficient_sum: float
    sum_verdict: Verdict
    radius: RadiusEstimate
    boundary_norm: float
    holomorphy_defect: float
    boundary_member: bool
    sum_member: bool | None
    agree: bool
    ratio: float
    sweep: dict

    @property
    def member(self) -> bool:
        return self.agree and self.boundary_member


def jacobi_membership_report(f: Callable, family: FamilySpec, theta: float, K: int = 64,
                             contour: EllipseContour | None = None,
                             sweep: Sequence[float] | None = None,
                             holomorphy_tol: float = 1e-6) -> JacobiMembershipReport:
    """Compare coefficient summability with the ellipse boundary norm.

    ``f`` must accept complex numpy arrays. The sum side uses Fourier-Jacobi
    coefficients by Gauss quadrature; the boundary side is int |f|^2 |dz|
    over the boundary of E_theta, together with a holomorphy check inside
    E_theta. ``sweep`` lists extra theta values at which the boundary norm
    is reported.
    """
    if not family.is_jacobi_type:
        raise DomainError("jacobi_membership_report needs a Jacobi-type family")
    a, b = family.jacobi_params
    if a < -0.5 or b < -0.5:
        raise DomainError("alpha, beta >= -1/2 is required")
    contour = contour or EllipseContour(theta, 1024)
    if contour.theta != theta:
        raise ValueError("contour theta does not match theta")

    coeffs = fourier_coefficients(f, family, K, min(256, 2 * K + 16))
    summary = analyze(coeffs, [theta])
    verdict = summary.verdicts[0]
    csum = float(summary.partial_sums[0, -1])

    def boundary_norm(th, n):
        with np.errstate(all="ignore"):
            val = ellipse_contour_integral(lambda z: np.abs(f(z)) ** 2, EllipseContour(th, n))
        return val.real

    bnorm = boundary_norm(theta, contour.n_nodes)
    defect = holomorphy_defect(f, theta, max(contour.n_nodes, 1024))
    boundary_member = bool(math.isfinite(bnorm) and defect <= holomorphy_tol)
    sum_member = {Verdict.CONVERGED: True, Verdict.DIVERGING: False}.get(verdict)
    sweep_vals = {float(th): boundary_norm(th, contour.n_nodes) for th in (sweep or [])}
    return JacobiMembershipReport(
        family=family,
        theta=theta,
        coefficient_sum=csum,
        sum_verdict=verdict,
        radius=summary.radius,
        boundary_norm=bnorm,
        holomorphy_defect=defect,
        boundary_member=boundary_member,
        sum_member=sum_member,
        agree=sum_member is not None and sum_member == boundary_member,
        ratio=csum / bnorm if bnorm > 0 else math.nan,
        sweep=sweep_vals,
    )
