"""Scalar special functions used by the kernels and normalisations.

Everything here is a pure function of its arguments. Series are summed
with an explicit truncation policy (:class:`SeriesControl`) and fail loudly
instead of returning a half-converged value.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special

__all__ = [
    "DomainError",
    "TruncationError",
    "UnderflowWarning",
    "SeriesControl",
    "DEFAULT_CONTROL",
    "log_gamma",
    "log_pochhammer",
    "besseli_entire",
    "bessel_k",
    "bessel_k_integral",
    "gauss_2f1",
    "appell_f4",
    "pochhammer_ratio_limit_check",
]

# |argument| bound for the guarded hypergeometric series
SERIES_GUARD = 0.97


class DomainError(ValueError):
    """Argument outside the domain where a function is defined or trusted."""


class TruncationError(ArithmeticError):
    """A series did not meet its tolerance within the allowed number of terms."""


class UnderflowWarning(RuntimeWarning):
    """Result underflowed to zero; the returned 0.0 is a flag, not a value."""


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for power series.

    A sum stops once ``consecutive_small`` successive terms all satisfy
    ``|term| <= rel_tol * |partial sum|``.
    """

    max_terms: int = 4000
    rel_tol: float = 1e-16
    consecutive_small: int = 3

    def __post_init__(self):
        if int(self.max_terms) != self.max_terms or self.max_terms < 8:
            raise ValueError(f"max_terms must be an integer >= 8, got {self.max_terms}")
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if int(self.consecutive_small) != self.consecutive_small or self.consecutive_small < 2:
            raise ValueError(
                f"consecutive_small must be an integer >= 2, got {self.consecutive_small}"
            )


DEFAULT_CONTROL = SeriesControl()


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def log_pochhammer(a: float, k: int) -> float:
    """ln (a)_k = ln Gamma(a+k) - ln Gamma(a) for a > 0."""
    if k == 0:
        return 0.0
    return log_gamma(a + k) - log_gamma(a)


def _is_nonpositive_integer(c: float) -> bool:
    return c <= 0 and float(c).is_integer()


def _sum_series(first, ratio, ctrl: SeriesControl, what: str) -> complex:
    """Sum ``first * prod(ratio(m))`` term by term under ``ctrl``."""
    term = first
    total = first
    small = 0
    for m in range(ctrl.max_terms):
        term = term * ratio(m)
        total += term
        if abs(term) <= ctrl.rel_tol * abs(total):
            small += 1
            if small >= ctrl.consecutive_small:
                return total
        else:
            small = 0
    raise TruncationError(f"{what}: tolerance {ctrl.rel_tol} not met in {ctrl.max_terms} terms")


def besseli_entire(nu: float, w: complex, ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    r"""Entire Bessel combination E_nu(w) = sum_m w^m / (m! Gamma(nu+m+1)).

    Equals ``w**(-nu/2) * I_nu(2*sqrt(w))`` for any branch of the square
    root, so it is the safe way to evaluate the Hardy-Hille kernel at
    complex products z*conj(u).
    """
    if not nu > -1.0:
        raise DomainError(f"besseli_entire requires nu > -1, got {nu}")
    w = complex(w)
    first = complex(math.exp(-math.lgamma(nu + 1.0)))
    if w == 0:
        return first
    return _sum_series(
        first, lambda m: w / ((m + 1) * (nu + m + 1)), ctrl, "besseli_entire"
    )


def bessel_k(nu, x):
    """Modified Bessel function of the second kind K_nu(x), x > 0.

    Vectorised over ``x``. Values that underflow (x beyond roughly 700)
    come back as 0.0 together with an :class:`UnderflowWarning`.
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(~(x_arr > 0.0)):
        raise DomainError("bessel_k requires x > 0")
    out = special.kv(abs(float(nu)), x_arr)
    if np.any(out == 0.0):
        warnings.warn("bessel_k underflowed to 0", UnderflowWarning, stacklevel=2)
    if out.ndim == 0:
        return float(out)
    return out


def bessel_k_integral(nu: float, x: float, step: float = 0.05) -> float:
    """Slow reference path: K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt.

    The integrand is even and analytic in a strip, so the plain trapezoid
    rule on the real line converges geometrically in 1/step.
    """
    x = float(x)
    nu = abs(float(nu))
    if not x > 0.0:
        raise DomainError(f"bessel_k_integral requires x > 0, got {x}")
    # log-integrand g(t) = -x cosh t + nu t peaks where sinh t = nu / x
    t_peak = math.asinh(nu / x)
    g_peak = -x * math.cosh(t_peak) + nu * t_peak
    t_end = t_peak + 1.0
    while -x * math.cosh(t_end) + nu * t_end > g_peak - 60.0:
        t_end += 1.0
    n = int(math.ceil(t_end / step))
    t = np.arange(n + 1) * step
    # scaled by exp(-g_peak) to stay in range; cosh(nu t) = (e^{nu t} + e^{-nu t}) / 2
    vals = 0.5 * (np.exp(-x * np.cosh(t) + nu * t - g_peak)
                  + np.exp(-x * np.cosh(t) - nu * t - g_peak))
    total = step * (0.5 * vals[0] + vals[1:].sum())
    return float(total * math.exp(g_peak))


def gauss_2f1(a: float, b: float, c: float, t: complex,
              ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Gauss hypergeometric series 2F1(a, b; c; t) for |t| <= 0.97."""
    if _is_nonpositive_integer(c):
        raise DomainError(f"gauss_2f1: c must not be a non-positive integer, got {c}")
    t = complex(t)
    if abs(t) > SERIES_GUARD:
        raise DomainError(f"gauss_2f1: |t| = {abs(t):.6g} exceeds guard {SERIES_GUARD}")
    if t == 0:
        return 1.0 + 0.0j
    return _sum_series(
        1.0 + 0.0j,
        lambda k: (a + k) * (b + k) / ((c + k) * (k + 1)) * t,
        ctrl,
        "gauss_2f1",
    )


def _log_factor_table(c: float, z: complex, n: int) -> np.ndarray:
    """log of z^m / ((c)_m m!) for m = 0..n-1 (complex logs)."""
    m = np.arange(n)
    steps = np.log((c + m[:-1]).astype(complex) * (m[:-1] + 1))
    out = np.zeros(n, dtype=complex)
    out[1:] = m[1:] * np.log(complex(z)) - np.cumsum(steps)
    return out


def appell_f4(a: float, b: float, c1: float, c2: float, t: complex, s: complex,
              ctrl: SeriesControl = DEFAULT_CONTROL) -> complex:
    r"""Appell F4(a, b; c1, c2; t, s) = sum (a)_{m+n} (b)_{m+n} t^m s^n / ((c1)_m (c2)_n m! n!).

    Summed over diagonal blocks m + n = N. Requires sqrt|t| + sqrt|s| <= 0.97.
    """
    for c in (c1, c2):
        if _is_nonpositive_integer(c):
            raise DomainError(f"appell_f4: c must not be a non-positive integer, got {c}")
    t, s = complex(t), complex(s)
    r = math.sqrt(abs(t)) + math.sqrt(abs(s))
    if r > SERIES_GUARD:
        raise DomainError(f"appell_f4: sqrt|t| + sqrt|s| = {r:.6g} exceeds guard {SERIES_GUARD}")
    if r == 0.0:
        return 1.0 + 0.0j
    if s == 0:
        return gauss_2f1(a, b, c1, t, ctrl)
    if t == 0:
        return gauss_2f1(a, b, c2, s, ctrl)

    # first guess at the block count from the geometric rate r^(2N)
    n_blocks = int(min(ctrl.max_terms, 64 + math.log(ctrl.rel_tol * 1e-3) / (2.0 * math.log(r))))
    while True:
        blocks = _f4_blocks(a, b, c1, c2, t, s, n_blocks)
        partial = np.cumsum(blocks)
        small = np.abs(blocks) <= ctrl.rel_tol * np.abs(partial)
        run = 0
        for N in range(1, n_blocks):
            run = run + 1 if small[N] else 0
            if run >= ctrl.consecutive_small:
                return complex(partial[N])
        if n_blocks >= ctrl.max_terms:
            raise TruncationError(
                f"appell_f4: tolerance {ctrl.rel_tol} not met in {ctrl.max_terms} blocks"
            )
        n_blocks = min(ctrl.max_terms, 2 * n_blocks)


def _f4_blocks(a, b, c1, c2, t, s, n_blocks):
    lu = _log_factor_table(c1, t, n_blocks)
    lv = _log_factor_table(c2, s, n_blocks)
    N = np.arange(n_blocks)
    steps = np.log((a + N[:-1]).astype(complex) * (b + N[:-1]))
    lA = np.zeros(n_blocks, dtype=complex)
    lA[1:] = np.cumsum(steps)
    m = N[:, None]
    n = N[None, :]
    diag = m + n
    mask = diag < n_blocks
    logs = lu[:, None] + lv[None, :] + lA[np.minimum(diag, n_blocks - 1)]
    terms = np.where(mask, np.exp(np.where(mask, logs, -np.inf)), 0.0)
    idx = diag[mask]
    vals = terms[mask]
    re = np.bincount(idx, weights=vals.real, minlength=n_blocks)
    im = np.bincount(idx, weights=vals.imag, minlength=n_blocks)
    return re + 1j * im


def pochhammer_ratio_limit_check(a: float, b: float, k_max: int) -> np.ndarray:
    """r_k = Gamma(a+k)/Gamma(b+k) * k^(b-a) for k = 1..k_max; tends to 1."""
    if k_max < 10:
        raise ValueError(f"k_max must be >= 10, got {k_max}")
    k = np.arange(1, k_max + 1, dtype=float)
    if a + 1 <= 0 or b + 1 <= 0:
        raise DomainError("pochhammer_ratio_limit_check requires a + 1 > 0 and b + 1 > 0")
    lg = special.gammaln(a + k) - special.gammaln(b + k)
    return np.exp(lg + (b - a) * np.log(k))
