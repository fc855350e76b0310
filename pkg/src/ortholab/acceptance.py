"""The twelve end-to-end acceptance checks, shared by the test suite and the CLI.

Each ``criterion_N`` returns a :class:`CriterionResult` holding the individual
:class:`VerificationReport` rows it is built from. All random inputs come
from fixed seeds, so reruns produce identical numbers.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernels, summability
from .kernels import EllipseDomain, KernelKind, KernelSpec
from .orthopoly import FamilySpec
from .quadrature import chebyshev_boundary_gram, fourier_coefficients
from .specfun import SERIES_GUARD
from .summability import Verdict, VerificationReport

SEED = 20240611


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    reports: list[VerificationReport]
    runtime_ms: int
    detail: str = ""
    extra: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        worst = max((r.rel_err if r.expected != 0 else r.abs_err for r in self.reports
                     if math.isfinite(r.abs_err)), default=math.nan)
        return f"[{status}] criterion {self.number:2d}: {self.title} (worst err {worst:.3g}) {self.detail}".rstrip()


def _timed(fn: Callable[[], tuple[bool, list, str, dict]], number: int, title: str,
           budget_s: float | None = None) -> CriterionResult:
    t0 = time.perf_counter()
    ok, reports, detail, extra = fn()
    elapsed = time.perf_counter() - t0
    if budget_s is not None:
        within = elapsed < budget_s
        extra = {**extra, "runtime_budget_s": budget_s, "within_budget": within}
        if not within:
            detail = f"{detail} runtime {elapsed:.2f}s over {budget_s:g}s budget".strip()
        ok = ok and within
    return CriterionResult(number, title, bool(ok), reports, int(round(1000 * elapsed)),
                           detail, extra)


def _worst_report(name, computed, expected, tol, **notes):
    """Report on the pair (computed, expected) with the largest relative error."""
    computed, expected = np.asarray(computed), np.asarray(expected)
    rel = np.abs(computed - expected) / np.abs(expected)
    i = int(np.nanargmax(rel))
    return VerificationReport.compare(name, computed[i], expected[i], tol,
                                      n_points=int(computed.size), **notes)


def _series_vs_closed(spec: KernelSpec, zs, us, K: int, tol: float, label: str):
    fam = spec.family()
    series = [kernels.kernel_series(fam, spec.theta, z, u, K).value for z, u in zip(zs, us)]
    closed = [kernels.kernel_closed(spec, z, u) for z, u in zip(zs, us)]
    return _worst_report(label, series, closed, tol, K=K)


# --- 1, 2: Mehler and Hardy-Hille -------------------------------------------------


def criterion_1() -> CriterionResult:
    def run():
        rng = np.random.default_rng(SEED + 1)
        reports = []
        for theta in (1.5, 2.0, 4.0):
            zs = rng.uniform(-1, 1, 50) + 1j * rng.uniform(-1, 1, 50)
            us = rng.uniform(-1, 1, 50) + 1j * rng.uniform(-1, 1, 50)
            spec = KernelSpec(KernelKind.HERMITE_MEHLER, theta)
            reports.append(_series_vs_closed(spec, zs, us, 60, 1e-8,
                                             f"mehler series vs closed (theta={theta:g})"))
        return all(r.passed for r in reports), reports, "", {}

    return _timed(run, 1, "Mehler bilinear series (K=60) vs closed form", budget_s=5.0)


def _disk(rng, n, radius):
    r = radius * np.sqrt(rng.random(n))
    return r * np.exp(2j * math.pi * rng.random(n))


def criterion_2() -> CriterionResult:
    def run():
        rng = np.random.default_rng(SEED + 2)
        reports = []
        for nu in (0.5, 1.5):
            for theta in (1.5, 2.0, 4.0):
                zs, us = _disk(rng, 50, 2.0), _disk(rng, 50, 2.0)
                spec = KernelSpec(KernelKind.LAGUERRE_HARDY_HILLE, theta, nu=nu)
                reports.append(_series_vs_closed(
                    spec, zs, us, 60, 1e-8,
                    f"hardy-hille series vs closed (nu={nu:g}, theta={theta:g})"))
        return all(r.passed for r in reports), reports, "", {}

    return _timed(run, 2, "Hardy-Hille bilinear series (K=60) vs closed form")


# --- 3: Bailey and Gegenbauer ------------------------------------------------------

# highest degree the recurrence supports
BAILEY_K = 200


def guarded_pairs(spec: KernelSpec, rng, n: int, theta_sample: float | None = None):
    """n pairs drawn uniformly from E_theta_sample (default E_theta) that pass the guard."""
    dom = EllipseDomain(theta_sample or spec.theta)
    zs, us = [], []
    while len(zs) < n:
        z, u = dom.sample(rng, 2)
        if kernels.hypergeometric_guard(spec, z, u) <= SERIES_GUARD:
            zs.append(z)
            us.append(u)
    return np.array(zs), np.array(us)


def criterion_3() -> CriterionResult:
    def run():
        rng = np.random.default_rng(SEED + 3)
        theta = 2.0
        reports = []
        for a, b in ((0.5, 0.5), (0.0, 1.0)):
            spec = KernelSpec(KernelKind.JACOBI_BAILEY, theta, alpha=a, beta=b)
            zs, us = guarded_pairs(spec, rng, 30)
            reports.append(_series_vs_closed(
                spec, zs, us, BAILEY_K, 1e-7, f"bailey series vs closed (alpha={a:g}, beta={b:g})"))
        for lam in (0.0, 1.0):
            spec = KernelSpec(KernelKind.GEGENBAUER_CLOSED, theta, lam=lam)
            zs, us = guarded_pairs(spec, rng, 30)
            reports.append(_series_vs_closed(
                spec, zs, us, BAILEY_K, 1e-7, f"gegenbauer series vs closed (lam={lam:g})"))
        for lam in (0.0, 1.0):
            jac = KernelSpec(KernelKind.JACOBI_BAILEY, theta, alpha=lam - 0.5, beta=lam - 0.5)
            geg = KernelSpec(KernelKind.GEGENBAUER_CLOSED, theta, lam=lam)
            res = []
            while len(res) < 20:
                z, u = EllipseDomain(theta).sample(rng, 2)
                if max(kernels.hypergeometric_guard(s, z, u) for s in (jac, geg)) > SERIES_GUARD:
                    continue
                res.append(kernels.gegenbauer_reduction_residual(theta, lam, z, u))
            reports.append(VerificationReport.compare(
                f"gegenbauer reduction residual (lam={lam:g})", max(res), 0.0, 1e-8,
                n_points=len(res)))
        return all(r.passed for r in reports), reports, "", {}

    return _timed(run, 3, "Bailey and Gegenbauer series vs closed forms")


# --- 4, 5: complex-plane orthogonality ---------------------------------------------


def _flatten(matrix):
    return [r for row in matrix for r in row]


def criterion_4() -> CriterionResult:
    def run():
        reps = _flatten(summability.orthogonality_matrix("hermite", 2.0, k_max=4,
                                                         diag_tol=1e-6, offdiag_tol=1e-8))
        return all(r.passed for r in reps), reps, "", {}

    return _timed(run, 4, "Hermite orthogonality, k,m <= 4, theta=2", budget_s=60.0)


def criterion_5() -> CriterionResult:
    def run():
        reps = _flatten(summability.orthogonality_matrix("laguerre", 3.0, nu=0.5, k_max=3,
                                                         diag_tol=1e-4, offdiag_tol=1e-6))
        return all(r.passed for r in reps), reps, "", {}

    return _timed(run, 5, "Laguerre orthogonality, k,m <= 3, theta=3, nu=0.5")


# --- 6: ellipse orthogonality ----------------------------------------------------


def ellipse_gram_expected(theta: float, k: int, m: int) -> float:
    if k != m:
        return 0.0
    return 4.0 if k == 0 else theta**k + theta**-k


def criterion_6() -> CriterionResult:
    def run():
        reps = []
        for theta in (1.5, 2.0, 4.0):
            for k in range(11):
                for m in range(11):
                    val = chebyshev_boundary_gram(theta, k, m)
                    reps.append(VerificationReport.compare(
                        f"ellipse gram (theta={theta:g}, k={k}, m={m})", val,
                        ellipse_gram_expected(theta, k, m), 1e-10))
        return all(r.passed for r in reps), reps, "", {}

    return _timed(run, 6, "Chebyshev orthogonality on the ellipse boundary", budget_s=1.0)


# --- 7, 8: norm identities -------------------------------------------------------


def criterion_7() -> CriterionResult:
    def run():
        reps = [summability.hermite_norm_identity(t, th, tol=1e-6)
                for t in (0.2, 0.4) for th in (1.5, 2.0, 4.0)]
        return all(r.passed for r in reps), reps, "", {}

    return _timed(run, 7, "Hermite norm identity (generating family)")


def criterion_8() -> CriterionResult:
    def run():
        reps = [summability.laguerre_norm_identity(t, th, nu, tol=1e-4)
                for t in (0.2, 0.3) for th in (2.0, 3.0) for nu in (0.5, 1.5)]
        return all(r.passed for r in reps), reps, "", {}

    return _timed(run, 8, "Laguerre norm identity (generating family)")


# --- 9: thresholds ----------------------------------------------------------------


def _verdict_report(name, verdict: Verdict, wanted: Verdict) -> VerificationReport:
    ok = verdict is wanted
    rep = VerificationReport(name, complex(ok), 1.0 + 0j, 0.0 if ok else 1.0,
                             0.0 if ok else 1.0, 0.0, ok,
                             notes={"verdict": verdict.value, "wanted": wanted.value})
    return rep


def criterion_9() -> CriterionResult:
    def run():
        t, nu, K = 0.5, 0.5, 64
        fam = FamilySpec.laguerre(nu)
        coeffs = fourier_coefficients(lambda x: (1 - t) ** (-nu - 1) * np.exp(-x * t / (1 - t)),
                                      fam, K, 2 * K + 16)
        rep = summability.analyze(coeffs, [3.9, 4.1])
        reps = [
            _verdict_report("laguerre t=0.5 at theta=3.9", rep.verdicts[0], Verdict.CONVERGED),
            _verdict_report("laguerre t=0.5 at theta=4.1", rep.verdicts[1], Verdict.DIVERGING),
        ]
        est = rep.radius.value
        reps.append(VerificationReport.compare(
            "laguerre t=0.5 radius estimate", est, 4.0, 0.05, status=rep.radius.status))

        cheb = FamilySpec.chebyshev_t()
        f = lambda z: (1 - t * t) / (1 - 2 * t * z + t * t)
        for theta, member in ((3.5, True), (4.5, False)):
            m = summability.jacobi_membership_report(f, cheb, theta)
            ok = m.agree and m.boundary_member == member
            reps.append(VerificationReport(
                f"chebyshev t=0.5 membership at theta={theta:g}", complex(m.boundary_member),
                complex(member), float(not ok), float(not ok), 0.0, ok,
                notes={"sum_verdict": m.sum_verdict.value,
                       "holomorphy_defect": m.holomorphy_defect,
                       "boundary_norm": m.boundary_norm, "ratio": m.ratio}))
        pole = (t + 1 / t) / 2
        lhs = abs(pole - 1) + abs(pole + 1)
        rhs = math.sqrt(4.0) + 1 / math.sqrt(4.0)
        reps.append(VerificationReport.compare("pole on boundary of E_4", lhs, rhs, 1e-12))
        return all(r.passed for r in reps), reps, "", {"radius": est}

    return _timed(run, 9, "Convergence thresholds (Laguerre and Chebyshev families)")


# --- 10: positive semidefiniteness ------------------------------------------------

PSD_SPECS = (
    KernelSpec(KernelKind.HERMITE_MEHLER, 2.0),
    KernelSpec(KernelKind.LAGUERRE_HARDY_HILLE, 2.0, nu=0.5),
    KernelSpec(KernelKind.JACOBI_BAILEY, 2.0, alpha=0.5, beta=0.5),
    KernelSpec(KernelKind.GEGENBAUER_CLOSED, 2.0, lam=1.0),
    KernelSpec(KernelKind.HAT_K, 2.0, lam=1.0),
    KernelSpec(KernelKind.BERGMAN_SELBERG, 2.0, lam=1.0),
    KernelSpec(KernelKind.REDUCED_HERMITE, 2.0),
    KernelSpec(KernelKind.REDUCED_LAGUERRE, 2.0, nu=0.5),
)


def psd_points(spec: KernelSpec, rng, n: int = 8) -> np.ndarray:
    """n admissible points for ``spec``; every pair passes the series guard."""
    kind = spec.kind
    if kind in (KernelKind.HERMITE_MEHLER, KernelKind.REDUCED_HERMITE):
        return rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
    if kind in (KernelKind.LAGUERRE_HARDY_HILLE, KernelKind.REDUCED_LAGUERRE):
        return _disk(rng, n, 2.0)
    if kind is KernelKind.BERGMAN_SELBERG:
        return _disk(rng, n, 0.9 * math.sqrt((spec.theta**2 + 1) / (2 * spec.theta)))
    dom = EllipseDomain(spec.theta)
    while True:
        pts = dom.sample(rng, n, shrink=0.7)
        if all(kernels.hypergeometric_guard(spec, p, q) <= SERIES_GUARD
               for p in pts for q in pts):
            return pts


def criterion_10() -> CriterionResult:
    def run():
        rng = np.random.default_rng(SEED + 10)
        reps = []
        for spec in PSD_SPECS:
            worst = math.inf
            for _ in range(20):
                pts = psd_points(spec, rng)
                G = kernels.gram_matrix(spec, pts)
                lo = kernels.gram_min_eig(spec, pts) / np.trace(G).real
                worst = min(worst, lo)
            ok = worst >= -1e-10
            reps.append(VerificationReport(f"gram min eig / trace ({spec.kind.value})",
                                           complex(worst), 0j, abs(min(worst, 0.0)), math.inf,
                                           1e-10, bool(ok), notes={"sets": 20, "points": 8}))
        return all(r.passed for r in reps), reps, "", {}

    return _timed(run, 10, "Kernel Gram matrices are positive semidefinite")


# --- 11: ratio machinery ---------------------------------------------------------


def criterion_11() -> CriterionResult:
    def run():
        scan = kernels.hatk_ratio_scan(0.0, 1.0, 200)
        reps = [
            VerificationReport.compare("hatk ratio a_k^1/a_k^0 at k=200", scan.last, 1.0, 0.02),
            VerificationReport(
                "hatk ratio sup", complex(scan.sup), 10 + 0j, 0.0, 0.0, 0.0, scan.sup < 10,
                notes={"bound": "sup < 10"}),
        ]
        _, sup100 = kernels.jacobi_ratio_scan(-0.5, -0.5, 0.5, 100)
        _, sup200 = kernels.jacobi_ratio_scan(-0.5, -0.5, 0.5, 200)
        finite = math.isfinite(sup100) and math.isfinite(sup200)
        rep = VerificationReport.compare("jacobi ratio sup stability (100 vs 200)",
                                         sup200, sup100, 0.05, sup_100=sup100, sup_200=sup200)
        reps.append(rep if finite else rep.failed(reason="non-finite sup"))
        return all(r.passed for r in reps), reps, "", {}

    return _timed(run, 11, "Hypergeometric coefficient ratio scans")


# --- 12: gamma_k bounds -----------------------------------------------------------

GAMMA_TAIL_THETA = 4.0


def alpha_max_tail(theta: float, lam: float, k0: int = 200, k_end: int = 20000) -> float:
    """sum_{k > k0} alpha_max(k)^2, summed far enough for the geometric terms to vanish."""
    return float(math.fsum(kernels.alpha_max(theta, lam, k) ** 2 for k in range(k0 + 1, k_end)))


def criterion_12() -> CriterionResult:
    def run():
        reps = []
        for theta in (1.5, 2.0, 4.0):
            dense = EllipseDomain(theta)
            phi = 2 * math.pi * np.arange(8192) / 8192
            w = math.sqrt(theta) * np.exp(1j * phi)
            z = 0.5 * (w + 1 / w)
            for lam in (0.5, 1.0, 2.0):
                worst = 0.0
                for k in range(21):
                    grid_max = float(np.max(np.abs(kernels.gamma_k_eval(theta, lam, k, z))))
                    exact = kernels.alpha_max(theta, lam, k)
                    worst = max(worst, abs(grid_max - exact) / exact)
                reps.append(VerificationReport(
                    f"alpha_max vs boundary grid maxima (theta={theta:g}, lam={lam:g})",
                    complex(worst), 0j, worst, worst, 1e-10, worst <= 1e-10,
                    notes={"k_max": 20, "semi_major": dense.semi_major}))
        for lam in (0.5, 1.0, 2.0):
            tail = alpha_max_tail(GAMMA_TAIL_THETA, lam)
            reps.append(VerificationReport.compare(
                f"alpha_max^2 tail beyond k=200 (theta={GAMMA_TAIL_THETA:g}, lam={lam:g})",
                tail, 0.0, 1e-12))
        return all(r.passed for r in reps), reps, "", {}

    return _timed(run, 12, "gamma_k bounds and Cauchy tail")


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 13)}


def run_all(numbers=None, workers: int = 1) -> list[CriterionResult]:
    """Run the selected criteria, in order, with up to ``workers`` threads."""
    numbers = sorted(CRITERIA) if numbers is None else list(numbers)
    if workers <= 1:
        return [CRITERIA[n]() for n in numbers]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(CRITERIA[n]) for n in numbers]
        return [f.result() for f in futures]
