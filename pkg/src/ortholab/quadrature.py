"""Integration machinery.

* Gauss rules from the recurrence coefficients (Golub-Welsch).
* Fourier coefficients f_k = int f phi_k w on the real interval.
* Weighted area integrals over the complex plane for the Hermite and
  Laguerre norms (tensor Gauss-Legendre, or Gauss-Legendre x trapezoid in
  polar coordinates).
* Contour integrals over the ellipse boundary through the Zhukowskii map
  z = (w + 1/w) / 2, |w| = sqrt(theta), with the trapezoid rule in the angle.

Reductions use ``numpy.sum`` on contiguous arrays, which is pairwise and
deterministic for a given array shape.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import linalg, special

from . import orthopoly
from .orthopoly import FamilySpec, Kind
from .specfun import DomainError, bessel_k

__all__ = [
    "QuadratureRule",
    "CoefficientSeries",
    "TruncationWarning",
    "gauss_rule",
    "gauss_legendre",
    "fourier_coefficients",
    "Scheme",
    "PlanarGridSpec",
    "HermiteTheta",
    "LaguerreTheta",
    "planar_weighted_integral",
    "EllipseContour",
    "ellipse_contour_integral",
    "chebyshev_boundary_gram",
]

MAX_RULE_ORDER = 256
LAGUERRE_THETA_MAX = 8.0


class TruncationWarning(RuntimeWarning):
    """Neglected weight mass outside the integration domain is not negligible."""


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    family: FamilySpec
    order: int

    def integrate(self, f: Callable) -> complex | float:
        """Approximate int f(x) w(x) dx."""
        return np.sum(self.weights * f(self.nodes))


@dataclass
class CoefficientSeries:
    """Fourier coefficients f_0..f_K in an orthonormal family."""

    family: FamilySpec
    values: np.ndarray
    quadrature_order: int = 0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.ndim != 1 or self.values.size == 0:
            raise ValueError("coefficient series must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("coefficient series contains non-finite values")

    @property
    def K(self) -> int:
        return self.values.size - 1

    def __len__(self):
        return self.values.size


def gauss_rule(family: FamilySpec, n: int) -> QuadratureRule:
    """n-point Gauss rule for the weight of ``family`` (Golub-Welsch)."""
    if not 1 <= n <= MAX_RULE_ORDER:
        raise ValueError(f"rule order must lie in [1, {MAX_RULE_ORDER}], got {n}")
    a, b = orthopoly.recurrence_table(family, n)
    mass = orthopoly.total_mass(family)
    if n == 1:
        return QuadratureRule(np.array([a[0]]), np.array([mass]), family, 1)
    nodes = linalg.eigh_tridiagonal(a, b[1:], eigvals_only=True)
    # eigenvector components only fix small weights to absolute precision; the
    # Christoffel function 1 / sum_k phi_k(x)^2 gets them to relative precision
    weights = np.exp(-_log_christoffel_sum(a, b, mass, nodes))
    return QuadratureRule(nodes, weights, family, n)


def _log_christoffel_sum(a, b, mass, x):
    """log sum_{k<n} phi_k(x)^2, with per-node rescaling against overflow."""
    n = len(a)
    p_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / math.sqrt(mass))
    log_scale = np.zeros_like(x)
    acc = p * p
    for k in range(n - 1):
        p_next = ((x - a[k]) * p - b[k] * p_prev) / b[k + 1]
        p_prev, p = p, p_next
        acc = acc + p * p
        big = np.abs(p) > 1e100
        if np.any(big):
            f = np.where(big, 1e-100, 1.0)
            p, p_prev, acc = p * f, p_prev * f, acc * f * f
            log_scale = log_scale + np.where(big, 100 * math.log(10.0), 0.0)
    return np.log(acc) + 2 * log_scale


def gauss_legendre(n: int, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [lo, hi]."""
    rule = gauss_rule(FamilySpec.jacobi(0.0, 0.0), n)
    half = 0.5 * (hi - lo)
    return lo + half * (rule.nodes + 1.0), half * rule.weights


def fourier_coefficients(f: Callable, family: FamilySpec, K: int, n: int) -> CoefficientSeries:
    """f_k = sum_j w_j f(x_j) phi_k(x_j) for k = 0..K using an n-point Gauss rule.

    ``f`` must accept a numpy array of nodes. Take n >= K + 8 or so.
    """
    rule = gauss_rule(family, n)
    phi = orthopoly.eval_orthonormal_all(family, K, rule.nodes)
    fx = np.asarray(f(rule.nodes))
    values = np.sum(phi * (rule.weights * fx)[None, :], axis=1)
    return CoefficientSeries(family, values, n)


# --- planar integrals -------------------------------------------------------


class Scheme(str, enum.Enum):
    CARTESIAN = "cartesian"
    POLAR = "polar"


@dataclass(frozen=True)
class PlanarGridSpec:
    """Truncated tensor grid for an area integral.

    ``extent`` is the half-width of the square (cartesian) or the radius
    (polar). ``n_angle`` defaults to ``resolution``.
    """

    scheme: Scheme
    extent: float
    resolution: int
    n_angle: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if not self.extent > 0:
            raise ValueError("extent must be positive")
        if not 2 <= self.resolution <= MAX_RULE_ORDER:
            raise ValueError(f"resolution must lie in [2, {MAX_RULE_ORDER}]")
        if self.n_angle is not None and self.n_angle < 8:
            raise ValueError("n_angle must be >= 8")

    def refined(self) -> "PlanarGridSpec":
        """Same domain, doubled resolution (capped at the rule maximum)."""
        n_angle = None if self.n_angle is None else 2 * self.n_angle
        return PlanarGridSpec(self.scheme, self.extent,
                              min(2 * self.resolution, MAX_RULE_ORDER), n_angle)


@dataclass(frozen=True)
class HermiteTheta:
    """exp[-2((Re z)^2/(theta+1) + (Im z)^2/(theta-1))]."""

    theta: float

    def __post_init__(self):
        if not self.theta > 1:
            raise DomainError(f"theta must exceed 1, got {self.theta}")

    def __call__(self, z):
        t = self.theta
        return np.exp(-2.0 * (z.real**2 / (t + 1.0) + z.imag**2 / (t - 1.0)))

    def total_mass(self) -> float:
        return 0.5 * math.pi * math.sqrt(self.theta**2 - 1.0)

    def default_grid(self, degree: int = 0, resolution: int = 192) -> PlanarGridSpec:
        extent = math.sqrt((self.theta + 1.0) / 2.0) * (6.0 + math.sqrt(2 * degree + 1))
        return PlanarGridSpec(Scheme.CARTESIAN, extent, resolution)

    def tail_fraction(self, grid: PlanarGridSpec) -> float:
        """Upper bound on the weight mass outside the grid, relative to the total."""
        R = grid.extent
        t = self.theta
        if grid.scheme is Scheme.CARTESIAN:
            return float(special.erfc(R * math.sqrt(2.0 / (t + 1.0)))
                         + special.erfc(R * math.sqrt(2.0 / (t - 1.0))))
        # the disc of radius R contains the square of half-width R / sqrt(2)
        r = R / math.sqrt(2.0)
        return float(special.erfc(r * math.sqrt(2.0 / (t + 1.0)))
                     + special.erfc(r * math.sqrt(2.0 / (t - 1.0))))


@dataclass(frozen=True)
class LaguerreTheta:
    """exp(2 Re z/(theta-1)) |z|^nu K_nu(2 sqrt(theta) |z| / (theta-1))."""

    theta: float
    nu: float

    def __post_init__(self):
        if not 1 < self.theta <= LAGUERRE_THETA_MAX:
            raise DomainError(
                f"Laguerre planar weight needs 1 < theta <= {LAGUERRE_THETA_MAX}, got {self.theta}"
            )
        if not self.nu > -1:
            raise DomainError(f"nu must exceed -1, got {self.nu}")

    @property
    def decay(self) -> float:
        return 2.0 * math.sqrt(self.theta) / (self.theta - 1.0)

    @property
    def growth(self) -> float:
        return 2.0 / (self.theta - 1.0)

    def __call__(self, z):
        r = np.abs(z)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            k = bessel_k(self.nu, np.maximum(self.decay * r, 1e-300))
        return np.exp(self.growth * z.real) * r**self.nu * k

    def default_grid(self, degree: int = 0, resolution: int = 256,
                     n_angle: int = 256) -> PlanarGridSpec:
        # K_nu decay must beat the exp(2 Re z/(theta-1)) growth: net rate decay - growth
        rate = self.decay - self.growth
        extent = (40.0 + 4.0 * degree) / rate
        return PlanarGridSpec(Scheme.POLAR, extent, resolution, n_angle)

    def tail_fraction(self, grid: PlanarGridSpec) -> float:
        """Asymptotic bound on the neglected radial mass, relative to the total."""
        R = grid.extent if grid.scheme is Scheme.POLAR else grid.extent
        rate = self.decay - self.growth
        # K_nu(x) <= C sqrt(pi/2x) e^{-x}, so the tail behaves like Gamma(nu+3/2, rate R)
        p = self.nu + 1.5
        tail = special.gammaincc(p, rate * R) if p > 0 else math.exp(-rate * R)
        return float(tail)


def planar_weighted_integral(g: Callable, weight, grid: PlanarGridSpec,
                             tail_tol: float = 1e-12) -> complex:
    """int g(z) weight(z) dsigma over the truncated plane.

    ``g`` is called once on a 2-D complex array of grid points.
    """
    tail = weight.tail_fraction(grid)
    if tail > tail_tol:
        warnings.warn(
            f"neglected weight mass {tail:.3g} exceeds {tail_tol:.1g} of the total",
            TruncationWarning,
            stacklevel=2,
        )
    n = grid.resolution
    if grid.scheme is Scheme.CARTESIAN:
        x, wx = gauss_legendre(n, -grid.extent, grid.extent)
        z = x[:, None] + 1j * x[None, :]
        w2 = wx[:, None] * wx[None, :]
    else:
        r, wr = gauss_legendre(n, 0.0, grid.extent)
        m = grid.n_angle or n
        phi = 2.0 * math.pi * np.arange(m) / m
        z = r[:, None] * np.exp(1j * phi)[None, :]
        w2 = (wr * r)[:, None] * np.full(m, 2.0 * math.pi / m)[None, :]
    vals = np.asarray(g(z)) * weight(z) * w2
    return complex(np.sum(vals))


# --- ellipse boundary -------------------------------------------------------


@dataclass(frozen=True)
class EllipseContour:
    """Boundary of E_theta sampled uniformly in the Zhukowskii angle."""

    theta: float
    n_nodes: int = 256

    def __post_init__(self):
        if not self.theta > 1:
            raise DomainError(f"theta must exceed 1, got {self.theta}")
        n = self.n_nodes
        if n < 64 or n & (n - 1):
            raise ValueError(f"n_nodes must be a power of two >= 64, got {n}")

    @property
    def semi_major(self) -> float:
        s = math.sqrt(self.theta)
        return 0.5 * (s + 1.0 / s)

    @property
    def semi_minor(self) -> float:
        s = math.sqrt(self.theta)
        return 0.5 * (s - 1.0 / s)

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Boundary points z_j and |dz/dphi| at phi_j = 2 pi j / n."""
        phi = 2.0 * math.pi * np.arange(self.n_nodes) / self.n_nodes
        w = math.sqrt(self.theta) * np.exp(1j * phi)
        z = 0.5 * (w + 1.0 / w)
        speed = np.abs(w * w - 1.0) / (2.0 * np.abs(w) ** 2) * math.sqrt(self.theta)
        return z, speed


def ellipse_contour_integral(g: Callable, contour: EllipseContour,
                             rho: Callable | None = None) -> complex:
    """Trapezoid approximation of the boundary integral of g(z) rho(z) |dz|."""
    z, speed = contour.nodes()
    vals = np.asarray(g(z), dtype=complex) * speed
    if rho is not None:
        vals = vals * rho(z)
    return complex(np.sum(vals) * (2.0 * math.pi / contour.n_nodes))


def chebyshev_boundary_gram(theta: float, k: int, m: int, n_nodes: int = 256) -> complex:
    """(1/2pi) boundary integral of Tt_k conj(Tt_m) |z^2-1|^(-1/2) |dz|.

    Tt_k = 2 T_k, so that Tt_k(z(w)) = w^k + w^(-k) on the Zhukowskii circle.
    """
    if k < 0 or m < 0:
        raise ValueError("k and m must be non-negative")
    cheb = FamilySpec(Kind.CHEBYSHEV_T)
    top = max(k, m)

    def integrand(z):
        phi = orthopoly.eval_orthonormal_all(cheb, top, z)
        tk = 2.0 * orthopoly.standard_scale(cheb, k) * phi[k]
        tm = 2.0 * orthopoly.standard_scale(cheb, m) * phi[m]
        return tk * np.conj(tm)

    contour = EllipseContour(theta, n_nodes)
    value = ellipse_contour_integral(integrand, contour,
                                     lambda z: np.abs(z * z - 1.0) ** -0.5)
    return value / (2.0 * math.pi)
