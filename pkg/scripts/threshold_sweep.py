"""Verdicts and radius estimates across the convergence threshold.

The Laguerre generating family with parameter t has sum |f_k|^2 theta^k < inf
exactly for theta < 1/t^2, and so does the Chebyshev pole family. This sweeps
theta/threshold over a grid for several (t, nu) and tabulates the verdicts and
the estimated threshold, using coefficients from Gauss quadrature.

    python3 scripts/threshold_sweep.py [--K 64]
"""
import argparse
import sys

import numpy as np

from ortholab.orthopoly import FamilySpec
from ortholab.quadrature import fourier_coefficients
from ortholab.summability import analyze

FRACTIONS = (0.5, 0.8, 0.9, 0.95, 0.98, 1.02, 1.05, 1.1, 1.25, 2.0)
SHORT = {"Converged": "C", "Diverging": "D", "Inconclusive": "?"}


def laguerre_case(t, nu):
    fam = FamilySpec.laguerre(nu)
    return fam, lambda x: (1 - t) ** (-nu - 1) * np.exp(-x * t / (1 - t))


def chebyshev_case(t):
    return FamilySpec.chebyshev_t(), lambda x: (1 - t * t) / (1 - 2 * t * x + t * t)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--K", type=int, default=64)
    args = p.parse_args(argv)
    K = args.K
    cases = [(f"laguerre nu={nu:g} t={t:g}", t, *laguerre_case(t, nu))
             for nu in (0.0, 0.5, 1.5, 3.0) for t in (0.3, 0.5, 0.7)]
    cases += [(f"chebyshev t={t:g}", t, *chebyshev_case(t)) for t in (0.3, 0.5, 0.7, 0.9)]
    print(f"{'family':26s} {'threshold':>9s} {'estimate':>9s} {'ratio':>7s}  verdicts at "
          + " ".join(f"{f:g}" for f in FRACTIONS))
    for label, t, fam, f in cases:
        threshold = 1 / t**2
        coeffs = fourier_coefficients(f, fam, K, min(256, 2 * K + 16))
        grid = [fr * threshold for fr in FRACTIONS if fr * threshold > 1]
        rep = analyze(coeffs, grid)
        # theta <= 1 is outside the analysis and shows as "-"
        verdicts = "-" * (len(FRACTIONS) - len(grid)) + "".join(SHORT[v.value] for v in rep.verdicts)
        est = rep.radius.value
        print(f"{label:26s} {threshold:9.4f} {est:9.4f} {est / threshold:7.4f}  {verdicts}")
    print("C = Converged, D = Diverging, ? = Inconclusive, - = theta <= 1")


if __name__ == "__main__":
    sys.exit(main())
