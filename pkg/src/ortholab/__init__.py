"""Numerical companion for geometric-weight summability of orthogonal expansions."""
from .orthopoly import FamilySpec, Kind
from .kernels import KernelKind, KernelSpec
from .quadrature import CoefficientSeries
from .summability import Verdict, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "FamilySpec",
    "Kind",
    "KernelKind",
    "KernelSpec",
    "CoefficientSeries",
    "Verdict",
    "VerificationReport",
    "__version__",
]
