"""End-to-end orchestration: curve -> precision plan -> F -> chi."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .cohomology import CohomologyBasis, FrobMatrixF, build_basis, reduce_to_matrix
from .curve import CurveData, CurveInput, build_curve, residue_matrices
from .errors import AuditFailure
from .frobenius import LiftLog, frobenius_matrices, lift_inverse_r, lift_y, push_forward_forms
from .padic import make_context
from .precision import PrecisionPlan, choose_N, loss_functions
from .zeta import LPolynomial, ZetaReport, approximate_coeffs, counts_from_lpoly, recover_integer_lpoly


@dataclass
class RunConfig:
    precision_margin: int = 1
    force_N: Optional[int] = None
    oracle_depth: int = 0
    audit_only: bool = False
    threads: int = 1
    count_depth: Optional[int] = None  # point counts to report (default: genus)
    budget: int = 10**8
    extra_digits: int = 2


@dataclass
class RunResult:
    cd: CurveData
    plan: Optional[PrecisionPlan] = None
    lpoly: Optional[LPolynomial] = None
    counts: list = field(default_factory=list)
    F: Optional[FrobMatrixF] = None
    basis: Optional[CohomologyBasis] = None
    lift_log: Optional[LiftLog] = None
    checks: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    oracle: Optional[dict] = None
    approx: Optional[list] = None

    def report(self) -> ZetaReport:
        return ZetaReport(lpoly=self.lpoly, point_counts=list(self.counts), precision_plan=self.plan,
                          audit=self.cd.audit, timings=dict(self.timings), checks=dict(self.checks))


def prepare(inp: CurveInput, N_hint: int = 10) -> CurveData:
    ctx = make_context(inp.p, inp.n, N_hint, inp.f_mod)
    return build_curve(inp, ctx)


def frobenius_matrix(cd: CurveData, plan: PrecisionPlan, cfg: RunConfig, res: RunResult) -> FrobMatrixF:
    N = plan.N
    f1, f2 = loss_functions(cd)
    E = N + max(f1(N), f2) + cfg.extra_digits
    t1 = time.perf_counter()
    log = LiftLog([])
    alpha = lift_inverse_r(cd, N, log)
    beta = lift_y(cd, alpha, N, log)
    fm = frobenius_matrices(cd, alpha, beta, N)
    res.timings["II_lift"] = time.perf_counter() - t1
    res.timings["I_basis"] = res.timings["II_push"] = res.timings["III_reduce"] = 0.0
    while True:
        t0 = time.perf_counter()
        rd = residue_matrices(cd, E)
        basis = build_basis(cd, rd, E)
        res.timings["I_basis"] += time.perf_counter() - t0
        t1 = time.perf_counter()
        pushed = push_forward_forms(cd, fm, basis.omegas[: basis.kernel_count], N)
        res.timings["II_push"] += time.perf_counter() - t1
        t2 = time.perf_counter()
        F = reduce_to_matrix(cd, rd, basis, pushed, E, plan.delta, cfg.threads)
        res.timings["III_reduce"] += time.perf_counter() - t2
        # the deepest intermediate shift must leave N digits
        if E - F.stats.peak >= N:
            break
        E += F.stats.peak
    res.basis, res.lift_log = basis, log
    res.checks["working_digits"] = E
    res.checks["peak_shift"] = F.stats.peak
    return F


def run(inp: CurveInput, cfg: RunConfig | None = None) -> RunResult:
    cfg = cfg or RunConfig()
    t0 = time.perf_counter()
    cd = prepare(inp)
    res = RunResult(cd=cd)
    res.timings["setup"] = time.perf_counter() - t0
    if not cd.audit.passed:
        raise AuditFailure(f"good-lift assumption fails: {', '.join(cd.audit.failing())}", report=cd.audit)
    if cfg.audit_only:
        return res
    plan = choose_N(cd, margin=cfg.precision_margin, force_N=cfg.force_N)
    res.plan = plan
    F = frobenius_matrix(cd, plan, cfg, res)
    res.F = F
    t3 = time.perf_counter()
    approx, _ = approximate_coeffs(F, cd.ctx)
    res.approx = approx
    L, checks = recover_integer_lpoly(approx, cd.genus, cd.p, cd.n, plan.chi_digits_per_i)
    res.lpoly = L
    res.checks.update(checks)
    res.checks["F_min_valuation"] = F.min_val
    res.checks["F_valuation_floor_ok"] = F.min_val >= -plan.delta
    res.checks["outside_H1_valuation"] = F.extra_coords_val
    res.checks["chi_at_1_positive"] = L(1) > 0
    res.counts = counts_from_lpoly(L, cfg.count_depth or cd.genus)
    res.timings["IV_zeta"] = time.perf_counter() - t3
    if cfg.oracle_depth:
        res.oracle = run_oracle(cd, cfg.oracle_depth, res.counts if len(res.counts) >= cfg.oracle_depth
                                else counts_from_lpoly(L, cfg.oracle_depth), cfg.budget)
    return res


def run_oracle(cd: CurveData, depth: int, predicted: list, budget: int) -> dict:
    from .oracle import boundary_algebras, count_points

    t = time.perf_counter()
    algs = boundary_algebras(cd)
    rows = []
    for i in range(1, depth + 1):
        c = count_points(cd, i, budget, algs)
        c["predicted"] = predicted[i - 1]
        c["match"] = c["total"] == predicted[i - 1]
        rows.append(c)
    return {"counts": rows, "all_match": all(r["match"] for r in rows), "seconds": time.perf_counter() - t}
