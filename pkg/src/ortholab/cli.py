"""Command-line front end.

Every subcommand writes one JSON document (stdout unless ``--json`` names a
file) and, with ``--csv``, a flat table of the same reports. Exit status:
0 when every report passes, 1 when any fails, 2 for usage errors and 3 for
I/O errors. ``ORTHOLAB_THREADS`` caps the worker threads of ``full-suite``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__, acceptance, kernels, summability
from .kernels import KernelKind, KernelSpec
from .orthopoly import FamilySpec
from .quadrature import chebyshev_boundary_gram, fourier_coefficients
from .summability import Verdict, VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def thread_count() -> int:
    raw = os.environ.get("ORTHOLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"ORTHOLAB_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise UsageError(f"ORTHOLAB_THREADS must be a positive integer, got {raw!r}")
    return n


# --- JSON encoding ------------------------------------------------------------


def _plain(x):
    """Convert numbers and containers to strict-JSON values.

    Floats keep Python's round-trip repr, so every double is reproduced
    exactly. Non-finite values become the strings "inf", "-inf" and "nan".
    """
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        x = complex(x)
        if x.imag == 0:
            return _plain(x.real)
        return {"re": _plain(x.real), "im": _plain(x.imag)}
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if hasattr(x, "value") and isinstance(getattr(x, "value"), str):
        return x.value
    return x


def report_dict(rep: VerificationReport) -> dict:
    return {
        "name": rep.name,
        "computed": rep.computed,
        "expected": rep.expected,
        "abs_err": rep.abs_err,
        "rel_err": rep.rel_err,
        "tolerance": rep.tolerance,
        "passed": rep.passed,
        "runtime_ms": rep.runtime_ms,
        "notes": rep.notes,
    }


def build_document(command: str, config: dict, reports: list[VerificationReport],
                   extra: dict | None = None) -> dict:
    finite_rel = [r.rel_err for r in reports if math.isfinite(r.rel_err)]
    doc = {
        "command": command,
        "config": config,
        "reports": [report_dict(r) for r in reports],
        "summary": {
            "pass_count": sum(r.passed for r in reports),
            "fail_count": sum(not r.passed for r in reports),
            "max_rel_err": max(finite_rel, default=0.0),
        },
        "tool_version": __version__,
    }
    if extra:
        doc.update(extra)
    return _plain(doc)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, allow_nan=False) + "\n"


def csv_text(reports: list[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "computed_re", "computed_im", "expected_re", "expected_im",
                "abs_err", "rel_err", "tolerance", "passed"])
    for r in reports:
        w.writerow([r.name, repr(r.computed.real), repr(r.computed.imag), repr(r.expected.real),
                    repr(r.expected.imag), repr(r.abs_err), repr(r.rel_err),
                    repr(r.tolerance), int(r.passed)])
    return buf.getvalue()


# --- subcommands ----------------------------------------------------------------


def _kernel_spec(args) -> KernelSpec:
    return KernelSpec(KernelKind(args.kind), args.theta, nu=args.nu, alpha=args.alpha,
                      beta=args.beta, lam=args.lam)


def cmd_kernel_check(args):
    spec = _kernel_spec(args)
    rng = np.random.default_rng(args.seed)
    config = dict(kind=spec.kind.value, theta=spec.theta, nu=spec.nu, alpha=spec.alpha,
                  beta=spec.beta, lam=spec.lam, K=args.K, points=args.points, seed=args.seed)
    reports = []
    try:
        family = spec.family()
    except ValueError:
        family = None
    if family is not None:
        if spec.kind in (KernelKind.JACOBI_BAILEY, KernelKind.GEGENBAUER_CLOSED):
            zs, us = acceptance.guarded_pairs(spec, rng, args.points)
        else:
            pts = acceptance.psd_points(spec, rng, 2 * args.points)
            zs, us = pts[: args.points], pts[args.points:]
        for i, (z, u) in enumerate(zip(zs, us)):
            t0 = time.perf_counter()
            s = kernels.kernel_series(family, spec.theta, z, u, args.K)
            c = kernels.kernel_closed(spec, z, u)
            reports.append(VerificationReport.compare(
                f"series vs closed #{i}", s.value, c, args.tol,
                int(round(1000 * (time.perf_counter() - t0))),
                z=complex(z), u=complex(u), last_term=s.last_term))
    pts = acceptance.psd_points(spec, rng, min(args.points, 32))
    G = kernels.gram_matrix(spec, pts)
    lo = kernels.gram_min_eig(spec, pts)
    ratio = lo / np.trace(G).real
    reports.append(VerificationReport(
        "gram min eig / trace", complex(ratio), 0j, abs(min(ratio, 0.0)), math.inf, 1e-10,
        bool(ratio >= -1e-10), notes={"points": len(pts)}))
    return config, reports, {}


def cmd_ortho_verify(args):
    config = dict(family=args.family, theta=args.theta, nu=args.nu, k_max=args.k_max)
    mat = summability.orthogonality_matrix(args.family, args.theta, nu=args.nu, k_max=args.k_max,
                                           offdiag_tol=args.offdiag_tol)
    return config, [r for row in mat for r in row], {}


def cmd_ellipse_ortho(args):
    config = dict(theta=args.theta, k_max=args.k_max, n_nodes=args.nodes)
    reports = []
    for k in range(args.k_max + 1):
        for m in range(args.k_max + 1):
            val = chebyshev_boundary_gram(args.theta, k, m, args.nodes)
            reports.append(VerificationReport.compare(
                f"ellipse gram (k={k}, m={m})", val,
                acceptance.ellipse_gram_expected(args.theta, k, m), 1e-10))
    return config, reports, {}


def _generating_family(name: str, t: float, nu: float):
    if name == "hermite":
        return FamilySpec.hermite(), (lambda x: np.exp(2 * x * t - t * t)), math.inf
    if name == "laguerre":
        return (FamilySpec.laguerre(nu), (lambda x: (1 - t) ** (-nu - 1) * np.exp(-x * t / (1 - t))),
                1 / (t * t))
    if name == "chebyshev_t":
        return FamilySpec.chebyshev_t(), (lambda x: (1 - t * t) / (1 - 2 * t * x + t * t)), 1 / (t * t)
    raise UsageError(f"unknown family {name!r}")


def cmd_summability(args):
    if not 0 < abs(args.t) < 1:
        raise UsageError("--gen-t must satisfy 0 < |t| < 1")
    family, f, threshold = _generating_family(args.family, args.t, args.nu)
    coeffs = fourier_coefficients(f, family, args.K, min(256, 2 * args.K + 16))
    rep = summability.analyze(coeffs, args.theta)
    config = dict(family=args.family, t=args.t, nu=args.nu, K=args.K, theta=list(args.theta))
    reports = []
    for th, verdict in zip(args.theta, rep.verdicts):
        wanted = Verdict.CONVERGED if th < threshold else Verdict.DIVERGING
        # verdicts close to the threshold are not expected to be decisive
        if abs(th / threshold - 1) < 0.02:
            wanted = verdict
        ok = verdict is wanted
        reports.append(VerificationReport(
            f"verdict at theta={th:g}", complex(ok), 1 + 0j, float(not ok), float(not ok), 0.0,
            ok, notes={"verdict": verdict.value, "expected_verdict": wanted.value}))
    est = rep.radius
    if math.isinf(threshold):
        ok = est.status == "infinite"
        reports.append(VerificationReport(
            "radius estimate", complex(est.value), complex(threshold), 0.0 if ok else math.inf,
            0.0 if ok else math.inf, 0.0, ok, notes={"status": est.status}))
    else:
        reports.append(VerificationReport.compare("radius estimate", est.value, threshold,
                                                  args.radius_tol, status=est.status))
    rows = {"partial_sums_last": [float(s[-1]) for s in rep.partial_sums],
            "resolved_K": rep.resolved_K}
    return config, reports, {"analysis": rows}


def cmd_norm_identity(args):
    config = dict(family=args.family, t=args.t, theta=args.theta, nu=args.nu)
    if args.family == "hermite":
        rep = summability.hermite_norm_identity(args.t, args.theta)
    else:
        rep = summability.laguerre_norm_identity(args.t, args.theta, args.nu)
    return config, [rep], {}


def cmd_full_suite(args):
    numbers = args.criteria or list(range(1, 13))
    bad = [n for n in numbers if n not in acceptance.CRITERIA]
    if bad:
        raise UsageError(f"unknown criteria {bad}")
    results = acceptance.run_all(numbers, workers=thread_count())
    reports = []
    for res in results:
        for r in res.reports:
            r.notes = {**r.notes, "criterion": res.number}
            reports.append(r)
    crit = [{"number": r.number, "title": r.title, "passed": r.passed,
             "runtime_ms": r.runtime_ms, "detail": r.detail, "extra": r.extra} for r in results]
    for r in results:
        print(r.line(), file=sys.stderr)
    return {"criteria": numbers}, reports, {"criteria": crit}


# --- parser ---------------------------------------------------------------------


def _float_list(text: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ortholab", description="Numerical checks for weighted orthogonal expansions.")
    p.add_argument("--version", action="version", version=f"ortholab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", metavar="PATH", help="write the JSON report here (default stdout)")
        sp.add_argument("--csv", metavar="PATH", help="also write a CSV table of the reports")

    sp = sub.add_parser("kernel-check", help="bilinear series vs closed form, plus a Gram PSD check")
    sp.add_argument("--kind", choices=[k.value for k in KernelKind], required=True)
    sp.add_argument("--theta", type=float, default=2.0)
    sp.add_argument("--nu", type=float, default=0.5)
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--beta", type=float, default=0.5)
    sp.add_argument("--lam", type=float, default=1.0)
    sp.add_argument("--K", type=int, default=60)
    sp.add_argument("--points", type=int, default=10)
    sp.add_argument("--seed", type=int, default=acceptance.SEED)
    sp.add_argument("--tol", type=float, default=1e-8)
    common(sp)
    sp.set_defaults(func=cmd_kernel_check)

    sp = sub.add_parser("ortho-verify", help="complex-plane orthogonality matrix")
    sp.add_argument("--family", choices=["hermite", "laguerre"], required=True)
    sp.add_argument("--theta", type=float, default=2.0)
    sp.add_argument("--nu", type=float, default=0.5)
    sp.add_argument("--kmax", "--k-max", dest="k_max", type=int, default=4)
    sp.add_argument("--offdiag-tol", type=float, default=1e-8)
    common(sp)
    sp.set_defaults(func=cmd_ortho_verify)

    sp = sub.add_parser("ellipse-ortho", help="Chebyshev orthogonality on the ellipse boundary")
    sp.add_argument("--theta", type=float, default=2.0)
    sp.add_argument("--kmax", "--k-max", dest="k_max", type=int, default=10)
    sp.add_argument("--nodes", type=int, default=256)
    common(sp)
    sp.set_defaults(func=cmd_ellipse_ortho)

    sp = sub.add_parser("summability", help="verdicts and threshold for a generating family")
    sp.add_argument("--family", choices=["hermite", "laguerre", "chebyshev_t"], required=True)
    sp.add_argument("--gen-t", "--t", dest="t", type=float, default=0.5)
    sp.add_argument("--nu", type=float, default=0.5)
    sp.add_argument("--K", type=int, default=64)
    sp.add_argument("--theta-grid", dest="theta", type=_float_list, default=[3.5, 3.9, 4.1])
    sp.add_argument("--radius-tol", type=float, default=0.05)
    common(sp)
    sp.set_defaults(func=cmd_summability)

    sp = sub.add_parser("norm-identity", help="coefficient sum vs area integral")
    sp.add_argument("--family", choices=["hermite", "laguerre"], required=True)
    sp.add_argument("--gen-t", "--t", dest="t", type=float, default=0.2)
    sp.add_argument("--theta", type=float, default=2.0)
    sp.add_argument("--nu", type=float, default=0.5)
    common(sp)
    sp.set_defaults(func=cmd_norm_identity)

    sp = sub.add_parser("full-suite", help="run the acceptance criteria")
    sp.add_argument("--criteria", type=int, nargs="+", metavar="N")
    common(sp)
    sp.set_defaults(func=cmd_full_suite)
    return p


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        thread_count()
        config, reports, extra = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"ortholab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        # numeric breakdown (series truncation, overflow) becomes a failing report
        config = {k: v for k, v in vars(args).items() if k not in ("func", "json", "csv")}
        reports = [VerificationReport(f"{args.command} aborted", complex(math.nan), complex(math.nan),
                                      math.inf, math.inf, 0.0, False,
                                      notes={"error": f"{type(exc).__name__}: {exc}"})]
        extra = {}
    doc = build_document(args.command, config, reports, extra)
    text = dumps(doc)
    try:
        if args.json:
            _write(args.json, text)
        else:
            sys.stdout.write(text)
        if args.csv:
            _write(args.csv, csv_text(reports))
    except OSError as exc:
        print(f"ortholab: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
