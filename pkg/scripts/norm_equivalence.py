"""Empirical constants between coefficient sums and ellipse boundary norms.

For holomorphic test functions in E_theta, the weighted coefficient sum in a
Jacobi-type family and the boundary norm int |f|^2 |dz| are comparable up to
constants depending on the family and theta. This prints the ratio
sum / boundary norm per function and the spread max/min per family.

    python3 scripts/norm_equivalence.py [--theta 2 --theta 4]
"""
import argparse
import sys

import numpy as np

from ortholab.orthopoly import FamilySpec
from ortholab.summability import jacobi_membership_report

FUNCTIONS = {
    "exp(z)": np.exp,
    "cos(z)": np.cos,
    "1/(3-z)": lambda z: 1.0 / (3.0 - z),
    "log(4-z)": lambda z: np.log(4.0 - z),
    "sqrt(5+z)": lambda z: np.sqrt(5.0 + z),
    "z^3+z/2": lambda z: z**3 + 0.5 * z,
}
FAMILIES = (FamilySpec.chebyshev_t(), FamilySpec.jacobi(0.5, 0.5), FamilySpec.jacobi(0.0, 1.0),
            FamilySpec.jacobi(-0.5, 2.0), FamilySpec.gegenbauer(2.0))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--theta", type=float, action="append")
    args = p.parse_args(argv)
    for theta in args.theta or [1.5, 2.0]:
        print(f"theta = {theta:g}")
        print(f"  {'family':30s}" + "".join(f"{n:>11s}" for n in FUNCTIONS) + f"{'spread':>9s}")
        for fam in FAMILIES:
            ratios = [jacobi_membership_report(f, fam, theta).ratio for f in FUNCTIONS.values()]
            spread = max(ratios) / min(ratios)
            print(f"  {fam.label():30s}" + "".join(f"{r:11.4f}" for r in ratios)
                  + f"{spread:9.3f}")


if __name__ == "__main__":
    sys.exit(main())
