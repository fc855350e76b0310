"""Orthonormal classical polynomials at real and complex arguments.

Each family is described by a :class:`FamilySpec`; evaluation runs the
three-term recurrence

    b_{k+1} p_{k+1}(x) = (x - a_k) p_k(x) - b_k p_{k-1}(x),   p_0 = mu_0^{-1/2},

with ``mu_0`` the total mass of the weight. Laguerre polynomials are then
flipped by (-1)^k so they share the sign of L_k^nu. Gegenbauer(lam) is handled as
Jacobi(lam - 1/2, lam - 1/2) and ChebyshevT as Gegenbauer(0).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .specfun import DomainError

__all__ = [
    "Kind",
    "FamilySpec",
    "PolynomialOverflowError",
    "MAX_DEGREE",
    "jacobi_tau",
    "gegenbauer_tau",
    "total_mass",
    "recurrence_coeffs",
    "recurrence_table",
    "eval_orthonormal",
    "eval_orthonormal_all",
    "standard_scale",
]

MAX_DEGREE = 200


class PolynomialOverflowError(OverflowError):
    pass


class Kind(str, enum.Enum):
    HERMITE = "hermite"
    LAGUERRE = "laguerre"
    JACOBI = "jacobi"
    GEGENBAUER = "gegenbauer"
    CHEBYSHEV_T = "chebyshev_t"


@dataclass(frozen=True)
class FamilySpec:
    """Which orthogonal family, with its parameters.

    Use the classmethod constructors rather than filling fields by hand.
    """

    kind: Kind
    nu: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.LAGUERRE and not self.nu > -1.0:
            raise DomainError(f"Laguerre requires nu > -1, got {self.nu}")
        if self.kind is Kind.JACOBI and not (self.alpha > -1.0 and self.beta > -1.0):
            raise DomainError(f"Jacobi requires alpha, beta > -1, got {self.alpha}, {self.beta}")
        if self.kind is Kind.GEGENBAUER and not self.lam >= 0.0:
            raise DomainError(f"Gegenbauer requires lam >= 0, got {self.lam}")
        if self.kind is Kind.CHEBYSHEV_T and self.lam != 0.0:
            raise DomainError("ChebyshevT carries no parameter")

    @classmethod
    def hermite(cls) -> "FamilySpec":
        return cls(Kind.HERMITE)

    @classmethod
    def laguerre(cls, nu: float) -> "FamilySpec":
        return cls(Kind.LAGUERRE, nu=float(nu))

    @classmethod
    def jacobi(cls, alpha: float, beta: float) -> "FamilySpec":
        return cls(Kind.JACOBI, alpha=float(alpha), beta=float(beta))

    @classmethod
    def gegenbauer(cls, lam: float) -> "FamilySpec":
        return cls(Kind.GEGENBAUER, lam=float(lam))

    @classmethod
    def chebyshev_t(cls) -> "FamilySpec":
        return cls(Kind.CHEBYSHEV_T)

    @property
    def is_jacobi_type(self) -> bool:
        return self.kind in (Kind.JACOBI, Kind.GEGENBAUER, Kind.CHEBYSHEV_T)

    @property
    def jacobi_params(self) -> tuple[float, float]:
        """(alpha, beta) of the equivalent Jacobi family."""
        if self.kind is Kind.JACOBI:
            return self.alpha, self.beta
        if self.kind is Kind.GEGENBAUER:
            return self.lam - 0.5, self.lam - 0.5
        if self.kind is Kind.CHEBYSHEV_T:
            return -0.5, -0.5
        raise DomainError(f"{self.kind.value} is not a Jacobi-type family")

    @property
    def interval(self) -> tuple[float, float]:
        if self.kind is Kind.HERMITE:
            return -math.inf, math.inf
        if self.kind is Kind.LAGUERRE:
            return 0.0, math.inf
        return -1.0, 1.0

    def weight(self, x):
        """Orthogonality weight on the real interval."""
        x = np.asarray(x, dtype=float)
        if self.kind is Kind.HERMITE:
            return np.exp(-x * x)
        if self.kind is Kind.LAGUERRE:
            return x**self.nu * np.exp(-x)
        a, b = self.jacobi_params
        return (1.0 - x) ** a * (1.0 + x) ** b

    def label(self) -> str:
        if self.kind is Kind.LAGUERRE:
            return f"laguerre(nu={self.nu:g})"
        if self.kind is Kind.JACOBI:
            return f"jacobi(alpha={self.alpha:g}, beta={self.beta:g})"
        if self.kind is Kind.GEGENBAUER:
            return f"gegenbauer(lam={self.lam:g})"
        return self.kind.value


def jacobi_tau(alpha: float, beta: float) -> float:
    """Total mass of (1-x)^alpha (1+x)^beta on (-1, 1)."""
    return math.exp(
        (alpha + beta + 1) * math.log(2.0)
        + math.lgamma(alpha + 1)
        + math.lgamma(beta + 1)
        - math.lgamma(alpha + beta + 2)
    )


def gegenbauer_tau(lam: float) -> float:
    """Total mass of (1-x^2)^(lam-1/2), i.e. sqrt(pi) Gamma(lam+1/2) / Gamma(lam+1)."""
    return math.exp(0.5 * math.log(math.pi) + math.lgamma(lam + 0.5) - math.lgamma(lam + 1))


def total_mass(family: FamilySpec) -> float:
    if family.kind is Kind.HERMITE:
        return math.sqrt(math.pi)
    if family.kind is Kind.LAGUERRE:
        return math.gamma(family.nu + 1)
    return jacobi_tau(*family.jacobi_params)


def recurrence_coeffs(family: FamilySpec, k: int) -> tuple[float, float]:
    """(a_k, b_k) of the orthonormal three-term recurrence; b_0 = 0 by convention."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if family.kind is Kind.HERMITE:
        return 0.0, math.sqrt(k / 2.0)
    if family.kind is Kind.LAGUERRE:
        nu = family.nu
        return 2 * k + nu + 1, math.sqrt(k * (k + nu))

    a, b = family.jacobi_params
    s = a + b
    if k == 0:
        a_k = (b - a) / (s + 2)
    else:
        a_k = (b * b - a * a) / ((2 * k + s) * (2 * k + s + 2))
    if k == 0:
        b_k = 0.0
    elif k == 1:
        # common factor (1 + a + b) cancelled so that a + b = -1 is regular
        b_k = math.sqrt(4 * (1 + a) * (1 + b) / ((2 + s) ** 2 * (3 + s)))
    else:
        num = 4 * k * (k + a) * (k + b) * (k + s)
        den = (2 * k + s) ** 2 * (2 * k + s + 1) * (2 * k + s - 1)
        b_k = math.sqrt(num / den)
    return a_k, b_k


def recurrence_table(family: FamilySpec, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Arrays a_0..a_{n-1} and b_0..b_{n-1}."""
    ab = [recurrence_coeffs(family, k) for k in range(n)]
    return np.array([x for x, _ in ab]), np.array([y for _, y in ab])


def eval_orthonormal_all(family: FamilySpec, K: int, z) -> np.ndarray:
    """phi_0(z)..phi_K(z), shape ``(K + 1,) + np.shape(z)``.

    Output is real for real input and complex otherwise.
    """
    if K < 0:
        raise ValueError(f"K must be >= 0, got {K}")
    if K > MAX_DEGREE:
        raise ValueError(f"degree {K} exceeds the supported maximum {MAX_DEGREE}")
    z = np.asarray(z)
    dtype = complex if np.iscomplexobj(z) else float
    z = z.astype(dtype)
    a, b = recurrence_table(family, K + 1)
    out = np.empty((K + 1,) + z.shape, dtype=dtype)
    out[0] = 1.0 / math.sqrt(total_mass(family))
    if K >= 1:
        out[1] = (z - a[0]) * out[0] / b[1]
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, K):
            out[k + 1] = ((z - a[k]) * out[k] - b[k] * out[k - 1]) / b[k + 1]
    if family.kind is Kind.LAGUERRE:
        # match the sign of L_k^nu, whose leading coefficient is (-1)^k / k!
        out[1::2] *= -1.0
    if not np.all(np.isfinite(out)):
        raise PolynomialOverflowError(
            f"{family.label()} recurrence overflowed before degree {K}"
        )
    return out


def eval_orthonormal(family: FamilySpec, k: int, z):
    """Orthonormal polynomial of degree ``k`` at ``z`` (scalar or array)."""
    vals = eval_orthonormal_all(family, k, z)[k]
    return vals[()] if vals.ndim == 0 else vals


def standard_scale(family: FamilySpec, k: int) -> float:
    """c_k with standard_poly_k = c_k * phi_k.

    Standard normalisations: physicists' Hermite H_k, generalised Laguerre
    L_k^nu, Jacobi P_k^(a,b), Gegenbauer C_k^lam (lam > 0) and Chebyshev T_k.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    kind = family.kind
    if kind is Kind.HERMITE:
        return math.exp(0.5 * (k * math.log(2.0) + math.lgamma(k + 1) + 0.5 * math.log(math.pi)))
    if kind is Kind.LAGUERRE:
        return math.exp(0.5 * (math.lgamma(k + family.nu + 1) - math.lgamma(k + 1)))
    if kind is Kind.CHEBYSHEV_T or (kind is Kind.GEGENBAUER and family.lam == 0.0):
        return math.sqrt(math.pi) if k == 0 else math.sqrt(math.pi / 2.0)
    if kind is Kind.GEGENBAUER:
        lam = family.lam
        log_h = (
            math.log(math.pi) + (1 - 2 * lam) * math.log(2.0) + math.lgamma(k + 2 * lam)
            - math.lgamma(k + 1) - math.log(k + lam) - 2 * math.lgamma(lam)
        )
        return math.exp(0.5 * log_h)
    a, b = family.alpha, family.beta
    if k == 0:
        return math.sqrt(jacobi_tau(a, b))
    log_h = (
        (a + b + 1) * math.log(2.0) - math.log(2 * k + a + b + 1)
        + math.lgamma(k + a + 1) + math.lgamma(k + b + 1)
        - math.lgamma(k + a + b + 1) - math.lgamma(k + 1)
    )
    return math.exp(0.5 * log_h)
