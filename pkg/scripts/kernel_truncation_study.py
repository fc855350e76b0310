"""Truncation degree needed for the bilinear series to match the closed kernels.

For each kernel configuration of acceptance criteria 1-3 this prints the worst
relative gap between the K-term bilinear series and the closed form for a
range of K, using the same random points as the acceptance suite.

    python3 scripts/kernel_truncation_study.py [--csv out.csv]
"""
import argparse
import csv
import sys

import numpy as np

from ortholab import acceptance, kernels
from ortholab.kernels import KernelKind, KernelSpec

DEGREES = (40, 60, 80, 100, 120, 150, 200)


def worst_gap(spec, zs, us, K):
    fam = spec.family()
    closed = np.array([kernels.kernel_closed(spec, z, u) for z, u in zip(zs, us)])
    series = np.array([kernels.kernel_series(fam, spec.theta, z, u, K).value
                       for z, u in zip(zs, us)])
    return float(np.max(np.abs(series - closed) / np.abs(closed)))


def configurations():
    rng = np.random.default_rng(acceptance.SEED + 1)
    for theta in (1.5, 2.0, 4.0):
        zs = rng.uniform(-1, 1, 50) + 1j * rng.uniform(-1, 1, 50)
        us = rng.uniform(-1, 1, 50) + 1j * rng.uniform(-1, 1, 50)
        yield f"mehler theta={theta:g}", KernelSpec(KernelKind.HERMITE_MEHLER, theta), zs, us
    rng = np.random.default_rng(acceptance.SEED + 2)
    for nu in (0.5, 1.5):
        for theta in (1.5, 2.0, 4.0):
            zs, us = acceptance._disk(rng, 50, 2.0), acceptance._disk(rng, 50, 2.0)
            spec = KernelSpec(KernelKind.LAGUERRE_HARDY_HILLE, theta, nu=nu)
            yield f"hardy-hille nu={nu:g} theta={theta:g}", spec, zs, us
    rng = np.random.default_rng(acceptance.SEED + 3)
    for a, b in ((0.5, 0.5), (0.0, 1.0)):
        spec = KernelSpec(KernelKind.JACOBI_BAILEY, 2.0, alpha=a, beta=b)
        yield (f"bailey alpha={a:g} beta={b:g}", spec, *acceptance.guarded_pairs(spec, rng, 30))
    for lam in (0.0, 1.0):
        spec = KernelSpec(KernelKind.GEGENBAUER_CLOSED, 2.0, lam=lam)
        yield (f"gegenbauer lam={lam:g}", spec, *acceptance.guarded_pairs(spec, rng, 30))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--csv", help="write the table here as well")
    args = p.parse_args(argv)
    rows = []
    print(f"{'configuration':34s}" + "".join(f"{'K=' + str(k):>11s}" for k in DEGREES))
    for label, spec, zs, us in configurations():
        gaps = [worst_gap(spec, zs, us, K) for K in DEGREES]
        rows.append([label, *gaps])
        print(f"{label:34s}" + "".join(f"{g:11.2e}" for g in gaps))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["configuration", *(f"K={k}" for k in DEGREES)])
            w.writerows(rows)


if __name__ == "__main__":
    sys.exit(main())
