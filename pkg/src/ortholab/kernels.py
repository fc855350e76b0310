"""Reproducing kernels: closed forms, bilinear series and structural checks.

Every kernel is called as ``K(z, u)`` and conjugates ``u`` internally, so
``kernel_closed(spec, z, u)`` is the value the bilinear series
sum_k phi_k(z) conj(phi_k(u)) theta^-k would produce.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy import special

from . import orthopoly
from .orthopoly import FamilySpec, Kind, gegenbauer_tau, jacobi_tau
from .specfun import (
    DEFAULT_CONTROL,
    SERIES_GUARD,
    DomainError,
    SeriesControl,
    appell_f4,
    besseli_entire,
    gauss_2f1,
)

__all__ = [
    "KernelKind",
    "KernelSpec",
    "GuardError",
    "EllipseDomain",
    "KernelConstants",
    "bergman_selberg_h",
    "kernel_closed",
    "hypergeometric_guard",
    "SeriesValue",
    "kernel_series",
    "gram_matrix",
    "gram_min_eig",
    "factorization_residual",
    "gegenbauer_reduction_residual",
    "RatioScan",
    "hatk_coefficients",
    "hatk_ratio_scan",
    "jacobi_ratio_scan",
    "gamma_k_eval",
    "alpha_max",
]


class GuardError(DomainError):
    """Point lies in the kernel's domain but outside the guarded series region."""


class KernelKind(str, enum.Enum):
    HERMITE_MEHLER = "hermite_mehler"
    LAGUERRE_HARDY_HILLE = "laguerre_hardy_hille"
    JACOBI_BAILEY = "jacobi_bailey"
    GEGENBAUER_CLOSED = "gegenbauer_closed"
    HAT_K = "hat_k"
    BERGMAN_SELBERG = "bergman_selberg"
    REDUCED_HERMITE = "reduced_hermite"
    REDUCED_LAGUERRE = "reduced_laguerre"


_ELLIPSE_KINDS = (KernelKind.JACOBI_BAILEY, KernelKind.GEGENBAUER_CLOSED, KernelKind.HAT_K)


@dataclass(frozen=True)
class KernelSpec:
    kind: KernelKind
    theta: float
    nu: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", KernelKind(self.kind))
        if not self.theta > 1:
            raise DomainError(f"theta must exceed 1, got {self.theta}")
        k = self.kind
        if k in (KernelKind.LAGUERRE_HARDY_HILLE, KernelKind.REDUCED_LAGUERRE) and not self.nu > -1:
            raise DomainError(f"nu must exceed -1, got {self.nu}")
        if k is KernelKind.JACOBI_BAILEY and not (self.alpha > -1 and self.beta > -1):
            raise DomainError("alpha and beta must exceed -1")
        if k is KernelKind.GEGENBAUER_CLOSED and not self.lam >= 0:
            raise DomainError("GegenbauerClosed needs lam >= 0")
        if k is KernelKind.HAT_K and not self.lam > -0.5:
            raise DomainError("HatK needs lam > -1/2")
        if k is KernelKind.BERGMAN_SELBERG and not self.lam > 0:
            raise DomainError("BergmanSelberg needs lam > 0")

    def family(self) -> FamilySpec:
        """Polynomial family whose bilinear series this kernel sums, if any."""
        if self.kind is KernelKind.HERMITE_MEHLER:
            return FamilySpec.hermite()
        if self.kind is KernelKind.LAGUERRE_HARDY_HILLE:
            return FamilySpec.laguerre(self.nu)
        if self.kind is KernelKind.JACOBI_BAILEY:
            return FamilySpec.jacobi(self.alpha, self.beta)
        if self.kind is KernelKind.GEGENBAUER_CLOSED:
            if self.lam == 0:
                return FamilySpec.chebyshev_t()
            return FamilySpec.gegenbauer(self.lam)
        raise ValueError(f"{self.kind.value} has no bilinear polynomial expansion")


@dataclass(frozen=True)
class EllipseDomain:
    """Open ellipse E_theta with foci +-1."""

    theta: float

    def __post_init__(self):
        if not self.theta > 1:
            raise DomainError(f"theta must exceed 1, got {self.theta}")

    @property
    def focal_sum(self) -> float:
        s = math.sqrt(self.theta)
        return s + 1.0 / s

    @property
    def semi_major(self) -> float:
        return 0.5 * self.focal_sum

    @property
    def semi_minor(self) -> float:
        s = math.sqrt(self.theta)
        return 0.5 * (s - 1.0 / s)

    def contains(self, z) -> np.ndarray | bool:
        z = np.asarray(z)
        return np.abs(z - 1) + np.abs(z + 1) < self.focal_sum

    def sample(self, rng: np.random.Generator, n: int, shrink: float = 1.0) -> np.ndarray:
        """Uniform random points in the ellipse scaled about 0 by ``shrink``."""
        a, b = shrink * self.semi_major, shrink * self.semi_minor
        r = np.sqrt(rng.random(n))
        phi = 2 * math.pi * rng.random(n)
        return a * r * np.cos(phi) + 1j * b * r * np.sin(phi)


@dataclass(frozen=True)
class KernelConstants:
    tau_jacobi: float
    tau_gegen: float
    h: float

    @classmethod
    def of(cls, theta: float, alpha: float = 0.0, beta: float = 0.0,
           lam: float = 0.0) -> "KernelConstants":
        tau_j = jacobi_tau(alpha, beta)
        tau_g = gegenbauer_tau(lam)
        return cls(tau_j, tau_g, bergman_selberg_h(theta, lam))


def bergman_selberg_h(theta: float, lam: float) -> float:
    """h = pi theta^(2 lam) / (tau(lam) (theta^2+1)^lam)."""
    return math.exp(math.log(math.pi) + 2 * lam * math.log(theta)
                    - math.log(gegenbauer_tau(lam)) - lam * math.log(theta**2 + 1))


# --- closed forms -----------------------------------------------------------


def _bailey_arguments(theta, z, ub):
    c = theta / (theta + 1.0) ** 2
    return c * (1 - z) * (1 - ub), c * (1 + z) * (1 + ub)


def _gegen_parts(theta, z, ub):
    """(1 - q, 2F1 argument) with q = 2 theta z ub / (theta^2 + 1)."""
    one_minus_q = 1.0 - 2.0 * theta * z * ub / (theta**2 + 1.0)
    d = (theta**2 + 1.0) * one_minus_q
    x = 4.0 * theta**2 * (1 - z * z) * (1 - ub * ub) / (d * d)
    return one_minus_q, x


def hypergeometric_guard(spec: KernelSpec, z: complex, u: complex) -> float:
    """Size of the series argument that the guard bounds by 0.97.

    sqrt|t| + sqrt|s| for JacobiBailey, |2F1 argument| for GegenbauerClosed and
    HatK, and 0 for kernels without a hypergeometric factor.
    """
    ub = np.conj(complex(u))
    z = complex(z)
    if spec.kind is KernelKind.JACOBI_BAILEY:
        t, s = _bailey_arguments(spec.theta, z, ub)
        return math.sqrt(abs(t)) + math.sqrt(abs(s))
    if spec.kind in (KernelKind.GEGENBAUER_CLOSED, KernelKind.HAT_K):
        return abs(_gegen_parts(spec.theta, z, ub)[1])
    return 0.0


def _check_domain(spec: KernelSpec, z: complex, u: complex) -> None:
    if spec.kind in _ELLIPSE_KINDS:
        dom = EllipseDomain(spec.theta)
        if not (dom.contains(z) and dom.contains(u)):
            raise DomainError(f"points must lie in E_{spec.theta:g}")
        if hypergeometric_guard(spec, z, u) > SERIES_GUARD:
            raise GuardError(
                f"{spec.kind.value}: series argument {hypergeometric_guard(spec, z, u):.4g} "
                f"exceeds guard {SERIES_GUARD}"
            )
    elif spec.kind is KernelKind.BERGMAN_SELBERG:
        radius = math.sqrt((spec.theta**2 + 1) / (2 * spec.theta))
        if not (abs(z) < radius and abs(u) < radius):
            raise DomainError(f"points must satisfy |z| < {radius:.6g}")


def kernel_closed(spec: KernelSpec, z: complex, u: complex,
                  ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Closed-form kernel value K(z, conj u)."""
    z, u = complex(z), complex(u)
    _check_domain(spec, z, u)
    ub = u.conjugate()
    th = spec.theta
    kind = spec.kind

    if kind in (KernelKind.HERMITE_MEHLER, KernelKind.REDUCED_HERMITE):
        pref = th / math.sqrt(math.pi * (th * th - 1))
        expo = 2 * z * ub * th
        if kind is KernelKind.HERMITE_MEHLER:
            expo -= z * z + ub * ub
        return pref * np.exp(expo / (th * th - 1))

    if kind in (KernelKind.LAGUERRE_HARDY_HILLE, KernelKind.REDUCED_LAGUERRE):
        nu = spec.nu
        # (z ub)^(-nu/2) I_nu(2 sqrt(theta z ub)/(theta-1)) = (theta/(theta-1)^2)^(nu/2) E_nu(w)
        w = th * z * ub / (th - 1) ** 2
        val = (th / (th - 1)) ** (nu + 1) * besseli_entire(nu, w, ctrl)
        if kind is KernelKind.LAGUERRE_HARDY_HILLE:
            val *= np.exp(-(z + ub) / (th - 1))
        return complex(val)

    if kind is KernelKind.JACOBI_BAILEY:
        a, b = spec.alpha, spec.beta
        pref = math.exp((a + b + 1) * math.log(th) + math.log(th - 1)
                        - math.log(jacobi_tau(a, b)) - (a + b + 2) * math.log(th + 1))
        t, s = _bailey_arguments(th, z, ub)
        # alpha + 1 pairs with the (1 - z)(1 - ub) argument
        return pref * appell_f4((a + b) / 2 + 1, (a + b + 3) / 2, a + 1, b + 1, t, s, ctrl)

    if kind in (KernelKind.GEGENBAUER_CLOSED, KernelKind.HAT_K):
        lam = spec.lam
        one_minus_q, x = _gegen_parts(th, z, ub)
        f = gauss_2f1((lam + 1) / 2, (lam + 2) / 2, lam + 0.5, x, ctrl)
        d = (th * th + 1) * one_minus_q
        if kind is KernelKind.HAT_K:
            return (th * th - 1) / (math.pi * d) * f
        pref = th ** (2 * lam) * (th * th - 1) / gegenbauer_tau(lam)
        return pref * f / ((th * th + 1) ** (lam + 1) * one_minus_q ** (lam + 1))

    if kind is KernelKind.BERGMAN_SELBERG:
        lam = spec.lam
        q = 2 * th * z * ub / (th * th + 1)
        return bergman_selberg_h(th, lam) / (1 - q) ** lam

    raise ValueError(f"unknown kernel kind {kind}")


# --- bilinear series --------------------------------------------------------


class SeriesValue(NamedTuple):
    value: complex
    last_term: float
    terms_used: int


def kernel_series(family: FamilySpec, theta: float, z: complex, u: complex, K: int,
                  ctrl: SeriesControl | None = None) -> SeriesValue:
    """Partial bilinear sum sum_{k<=K} phi_k(z) phi_k(conj u) theta^-k.

    With ``ctrl`` the sum may stop before K once the truncation rule fires.
    ``last_term`` is the magnitude of the final term added.
    """
    if not theta > 1:
        raise DomainError(f"theta must exceed 1, got {theta}")
    if K < 0:
        raise ValueError("K must be >= 0")
    pts = np.array([complex(z), complex(u).conjugate()])
    phi = orthopoly.eval_orthonormal_all(family, K, pts)
    terms = phi[:, 0] * phi[:, 1] * theta ** -np.arange(K + 1, dtype=float)
    n = K + 1
    if ctrl is not None:
        partial = np.cumsum(terms)
        small = np.abs(terms) <= ctrl.rel_tol * np.abs(partial)
        run = 0
        for k in range(1, K + 1):
            run = run + 1 if small[k] else 0
            if run >= ctrl.consecutive_small:
                n = k + 1
                break
    return SeriesValue(complex(np.sum(terms[:n])), float(abs(terms[n - 1])), n)


# --- positive definiteness --------------------------------------------------


def gram_matrix(spec: KernelSpec, points: Sequence[complex]) -> np.ndarray:
    pts = [complex(p) for p in points]
    n = len(pts)
    G = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            G[i, j] = kernel_closed(spec, pts[i], pts[j])
            G[j, i] = G[i, j].conjugate() if i != j else G[i, j]
    return G


def gram_min_eig(spec: KernelSpec, points: Sequence[complex]) -> float:
    """Smallest eigenvalue of G_ij = K(p_i, conj p_j).

    Accept the kernel as positive semidefinite on ``points`` when the result
    is >= -tol * trace(G).
    """
    if not 1 <= len(points) <= 32:
        raise ValueError("gram_min_eig takes between 1 and 32 points")
    G = gram_matrix(spec, points)
    return float(np.linalg.eigvalsh(G)[0])


# --- proof machinery --------------------------------------------------------


def factorization_residual(kind: str, theta: float, z: complex, u: complex,
                           nu: float = 0.0) -> float:
    """|K_full - s(z) conj(s(u)) K_reduced(z conj u)| / |K_full|."""
    z, u = complex(z), complex(u)
    kind = Kind(kind)
    if kind is Kind.HERMITE:
        full = KernelSpec(KernelKind.HERMITE_MEHLER, theta)
        red = KernelSpec(KernelKind.REDUCED_HERMITE, theta)
        s = lambda x: np.exp(-x * x / (theta * theta - 1))
    elif kind is Kind.LAGUERRE:
        full = KernelSpec(KernelKind.LAGUERRE_HARDY_HILLE, theta, nu=nu)
        red = KernelSpec(KernelKind.REDUCED_LAGUERRE, theta, nu=nu)
        s = lambda x: np.exp(-x / (theta - 1))
    else:
        raise ValueError("factorization applies to the Hermite and Laguerre kernels only")
    kf = kernel_closed(full, z, u)
    kr = s(z) * np.conj(s(u)) * kernel_closed(red, z, u)
    return float(abs(kf - kr) / abs(kf))


def gegenbauer_reduction_residual(theta: float, lam: float, z: complex, u: complex) -> float:
    """Relative gap between JacobiBailey(lam-1/2, lam-1/2) and GegenbauerClosed(lam).

    Guard violations raise :class:`GuardError` naming the offending kernel.
    """
    jac = KernelSpec(KernelKind.JACOBI_BAILEY, theta, alpha=lam - 0.5, beta=lam - 0.5)
    geg = KernelSpec(KernelKind.GEGENBAUER_CLOSED, theta, lam=lam)
    kj = kernel_closed(jac, z, u)
    kg = kernel_closed(geg, z, u)
    return float(abs(kj - kg) / abs(kg))


class RatioScan(NamedTuple):
    inf: float
    sup: float
    last: float


def hatk_coefficients(lam: float, k_max: int) -> np.ndarray:
    """log a_k^lam = log [((lam+1)/2)_k ((lam+2)/2)_k / ((lam+1/2)_k k!)], k = 0..k_max."""
    k = np.arange(k_max + 1, dtype=float)
    a, b, c = (lam + 1) / 2, (lam + 2) / 2, lam + 0.5
    return (special.gammaln(a + k) - special.gammaln(a) + special.gammaln(b + k)
            - special.gammaln(b) - special.gammaln(c + k) + special.gammaln(c)
            - special.gammaln(k + 1))


def hatk_ratio_scan(lam: float, mu: float, k_max: int) -> RatioScan:
    """inf, sup and final value of a_k^mu / a_k^lam over k <= k_max."""
    if not (lam > -0.5 and mu > -0.5):
        raise DomainError("lam and mu must exceed -1/2")
    if k_max < 50:
        raise ValueError("k_max must be >= 50")
    r = np.exp(hatk_coefficients(mu, k_max) - hatk_coefficients(lam, k_max))
    return RatioScan(float(r.min()), float(r.max()), float(r[-1]))


def _log_jacobi_coefficients(alpha, beta, theta, kl_max):
    k = np.arange(kl_max + 1, dtype=float)
    K, L = np.meshgrid(k, k, indexing="ij")
    N = K + L
    p = (alpha + beta) / 2 + 1
    q = (alpha + beta + 3) / 2
    log_pref = ((alpha + beta + 1) * math.log(theta) + math.log(theta - 1)
                - math.log(jacobi_tau(alpha, beta)) - (alpha + beta + 2) * math.log(theta + 1))
    g = special.gammaln
    return (log_pref + g(p + N) - g(p) + g(q + N) - g(q)
            - (g(alpha + 1 + K) - g(alpha + 1)) - (g(beta + 1 + L) - g(beta + 1))
            - g(K + 1) - g(L + 1))


def jacobi_ratio_scan(alpha: float, beta: float, gamma: float, kl_max: int,
                      theta: float = 2.0) -> tuple[float, float]:
    """(inf, sup) of a^{alpha,beta}_{k,l} / a^{gamma,gamma}_{k,l} for 0 <= k, l <= kl_max.

    The coefficients include their theta-dependent prefactor, which only
    rescales the ratio by a constant.
    """
    if not (alpha > -1 and beta > -1 and gamma > -1):
        raise DomainError("alpha, beta, gamma must exceed -1")
    if kl_max < 50:
        raise ValueError("kl_max must be >= 50")
    r = np.exp(_log_jacobi_coefficients(alpha, beta, theta, kl_max)
               - _log_jacobi_coefficients(gamma, gamma, theta, kl_max))
    return float(r.min()), float(r.max())


def _gamma_k_scale(theta: float, lam: float, k: int) -> float:
    """log of sqrt(h) sqrt((lam)_k / k!)."""
    if not lam > 0:
        raise DomainError("lam must be positive")
    if k < 0:
        raise ValueError("k must be >= 0")
    log_poch = math.lgamma(lam + k) - math.lgamma(lam) - math.lgamma(k + 1)
    return 0.5 * (math.log(bergman_selberg_h(theta, lam)) + log_poch)


def gamma_k_eval(theta: float, lam: float, k: int, z):
    """gamma_k(z) = sqrt(h) sqrt((lam)_k/k!) (2 theta/(theta^2+1))^(k/2) z^k."""
    z = np.asarray(z, dtype=complex)
    radius = math.sqrt((theta**2 + 1) / (2 * theta))
    if np.any(np.abs(z) >= radius):
        raise DomainError(f"gamma_k is defined for |z| < {radius:.6g}")
    log_c = _gamma_k_scale(theta, lam, k) + 0.5 * k * math.log(2 * theta / (theta**2 + 1))
    out = math.exp(log_c) * z**k
    return out[()] if out.ndim == 0 else out


def alpha_max(theta: float, lam: float, k: int) -> float:
    """max of |gamma_k| on the ellipse boundary, attained at the end of the major axis."""
    ratio = (theta + 1) / math.sqrt(2 * (theta**2 + 1))
    return math.exp(_gamma_k_scale(theta, lam, k) + k * math.log(ratio))
