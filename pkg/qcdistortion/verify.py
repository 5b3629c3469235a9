"""Acceptance suite run by ``qcdistortion verify``

Every check compares a closed form against an independent oracle (dual
eigensolvers, brute-force grid search, scan-and-bisect crossings, finite
differences, sampled distortion). Checks never raise: failures and
unexpected exceptions are recorded and the suite continues.

Example:
    report = run_suite()
    print(report.passed, report.failures)
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

import numpy as np

from .config import Tolerances, get_tolerances
from .crossing import (
    branch_cubic,
    branch_eigenvalues,
    charpoly_by_interpolation,
    concavity_certificate,
    crossing_interval,
    crossing_quadratic,
    numeric_branches,
    pencil_charpoly,
    scan_crossings,
    t_of_lambda,
)
from .distortion import distortion_ratio, energy_gap
from .laminate import (
    DEFAULT_WEAK_ALPHAS,
    DEFAULT_WEAK_KS,
    convergence_study,
    cube_samples,
    hadamard_jump,
    laminate_distortion,
    laminate_gradient,
    lamination_angle,
    lamination_angle_limit,
    optimal_laminate,
    regime_strong,
    slab_distortion_check,
)
from .mat_core import jacobi_eigen, random_orthogonal, sym_eigen3
from .models import EnergySpec, SingularForm, SphericalParam
from .rank_one import closed_form_q, directional_series, grid_oracle, optimal_direction, q_objective
from .reporting.events import BaseEvent, CheckEvent, StageEvent, SummaryEvent
from .sweep import SQRT2, EXTEND_THRESHOLD, extend_until, ratio_is_monotone, sweep_cells

logger = logging.getLogger(__name__)

DEFAULT_GRID_ALPHAS = tuple(float(a) for a in np.linspace(1.5, 10.5, 10))
DEFAULT_GRID_BETAS = tuple(float(b) for b in np.linspace(11.0, 20.0, 10))
FAULT_SCALE = 1.0 + 1e-3
SCAN_POINTS = 2000


def faulty_quadratic(alpha: float, beta: float):
    """Crossing quadratic with a perturbed constant coefficient (mutation hook)"""
    P0, P1, P2 = crossing_quadratic(alpha, beta)
    return P0 * FAULT_SCALE, P1, P2


def faulty_cubic(alpha: float, beta: float, t: float):
    """Branch cubic with a perturbed constant coefficient (mutation hook)"""
    k3, k2, k1, k0 = branch_cubic(alpha, beta, t)
    return k3, k2, k1, k0 * FAULT_SCALE


@dataclass
class SuiteContext:
    """Inputs shared by all checks"""

    tol: Tolerances
    cells: list[tuple[float, float]]
    seed: int = 0
    workers: Optional[int] = None
    oracle_resolution: tuple[int, int] = (512, 128)
    quadratic: Callable = crossing_quadratic
    cubic: Callable = branch_cubic

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


@dataclass
class CheckResult:
    """Outcome of one named check"""

    name: str
    passed: bool
    seconds: float
    detail: dict = field(default_factory=dict)
    error: Optional[str] = None

    def to_dict(self) -> dict:
        result = {"name": self.name, "passed": self.passed, "seconds": self.seconds, "detail": self.detail}
        if self.error:
            result["error"] = self.error
        return result


@dataclass
class VerifyReport:
    """All check results in run order"""

    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[str]:
        return [check.name for check in self.checks if not check.passed]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "total": len(self.checks),
            "failures": self.failures,
            "checks": [check.to_dict() for check in self.checks],
        }


def _rel_err(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), np.finfo(float).tiny)


def check_distortion(ctx: SuiteContext) -> tuple[bool, dict]:
    """H(diag(1, c, c^2)) = c^2"""
    errors = {}
    for c in (1.5, 2.0, 3.0):
        errors[str(c)] = _rel_err(distortion_ratio(np.diag([1.0, c, c * c])), c * c)
    return max(errors.values()) <= 1e-12, {"relative_errors": errors}


def check_eigensolvers(ctx: SuiteContext) -> tuple[bool, dict]:
    """Closed-form and Jacobi eigenvalues agree on random symmetric matrices"""
    rng = ctx.rng()
    worst = 0.0
    for _ in range(100):
        M = rng.standard_normal((3, 3))
        S = M + M.T
        closed = sym_eigen3(S, tol=ctx.tol).values
        jacobi = jacobi_eigen(S).values
        scale = max(1.0, float(np.max(np.abs(closed))))
        worst = max(worst, float(np.max(np.abs(closed - jacobi))) / scale)
    return worst <= 1e-10, {"max_scaled_difference": worst}


def check_optimal_direction(ctx: SuiteContext) -> tuple[bool, dict]:
    """Closed-form B0 is stationary with d2 = -2q"""
    worst_d1, worst_d2, fd_disagreements = 0.0, 0.0, 0
    for alpha, beta in ctx.cells:
        F = SingularForm.sing(alpha, beta)
        series = directional_series(F.diagonal, optimal_direction(F, ctx.tol), tol=ctx.tol)
        worst_d1 = max(worst_d1, abs(series.d1))
        worst_d2 = max(worst_d2, _rel_err(series.d2, -2.0 * closed_form_q(alpha, beta)))
        fd_disagreements += 0 if series.well_conditioned else 1
    passed = worst_d1 <= 1e-8 and worst_d2 <= 1e-6
    return passed, {
        "cells": len(ctx.cells),
        "max_abs_d1": worst_d1,
        "max_rel_d2_error": worst_d2,
        "fd_disagreements": fd_disagreements,
    }


def check_grid_oracle(ctx: SuiteContext) -> tuple[bool, dict]:
    """Brute force finds nothing deeper than the closed-form d2 at Sing(1, 2, 4)"""
    F = SingularForm.sing(2.0, 4.0)
    n_theta, n_rs = ctx.oracle_resolution
    result = grid_oracle(F, n_theta=n_theta, n_rs=n_rs, workers=ctx.workers, tol=ctx.tol)
    closed = -2.0 * closed_form_q(F.alpha, F.beta)
    passed = result.series.d2 >= closed - 0.01 * abs(closed)
    return passed, {"closed_form_d2": closed, "oracle_d2": result.series.d2, "oracle": result.to_dict()}


def check_landscape_symmetry(ctx: SuiteContext) -> tuple[bool, dict]:
    """Q(theta1, theta2, r, s) = Q(pi - theta2, pi - theta1, s, r)"""
    F = SingularForm.sing(2.0, 4.0)
    rng = ctx.rng()
    worst = 0.0
    for _ in range(50):
        r, s = rng.uniform(0.05, 0.95, size=2)
        theta1, theta2 = rng.uniform(0.05, math.pi - 0.05, size=2)
        a = q_objective(F, SphericalParam(r=r, s=s, theta1=theta1, theta2=theta2))
        b = q_objective(F, SphericalParam(r=s, s=r, theta1=math.pi - theta2, theta2=math.pi - theta1))
        worst = max(worst, abs(a - b) / max(1.0, abs(a)))
    return worst <= 1e-10, {"max_scaled_difference": worst}


def check_charpoly_degree(ctx: SuiteContext) -> tuple[bool, dict]:
    """det[(A + tB0)^T (A + tB0) - lam^2 I] is quadratic in t"""
    rng = ctx.rng()
    worst_high, worst_closed = 0.0, 0.0
    for _ in range(100):
        alpha = rng.uniform(1.1, 20.0)
        beta = rng.uniform(alpha + 0.1, alpha + 20.0)
        lam = rng.uniform(0.5, beta)
        F = SingularForm.sing(alpha, beta)
        B0 = optimal_direction(F, ctx.tol)
        fit = charpoly_by_interpolation(F, B0, lam)
        scale = float(np.max(np.abs(fit)))
        worst_high = max(worst_high, float(np.max(np.abs(fit[:4]))) / scale)
        closed = np.array(pencil_charpoly(F, B0, lam, ctx.tol))
        worst_closed = max(worst_closed, float(np.max(np.abs(fit[4:] - closed))) / scale)
    return worst_high <= 1e-10 and worst_closed <= 1e-8, {
        "max_high_order_ratio": worst_high,
        "max_closed_form_difference": worst_closed,
    }


def check_branch_formulas(ctx: SuiteContext) -> tuple[bool, dict]:
    """Cardano branches and t(lambda) agree with numeric eigenvalues of S(t)"""
    worst_branch, worst_t = 0.0, 0.0
    for alpha, beta in ((2.0, 4.0), (2.0, 10.0), (3.5, 17.0)):
        F = SingularForm.sing(alpha, beta)
        interval = crossing_interval(F, tol=ctx.tol)
        ts = np.linspace(interval.t_minus, interval.t_plus, 9)[1:-1]
        for t, numeric in zip(ts, numeric_branches(F, ts, ctx.tol)):
            closed = branch_eigenvalues(F, float(t), cubic=ctx.cubic)
            for name in ("lam_min", "lam_mid", "lam_max"):
                worst_branch = max(worst_branch, _rel_err(getattr(closed, name), getattr(numeric, name)))
            lam = math.sqrt(numeric.lam_max)
            worst_t = max(worst_t, abs(t_of_lambda(F, lam, tol=ctx.tol) - t) / max(1.0, abs(t)))
    return worst_branch <= 1e-9 and worst_t <= 1e-8, {
        "max_branch_error": worst_branch,
        "max_t_error": worst_t,
    }


def check_crossings(ctx: SuiteContext) -> tuple[bool, dict]:
    """Closed-form t_minus, t_plus match the scan-and-bisect oracle"""
    worst = 0.0
    for alpha, beta in ctx.cells:
        F = SingularForm.sing(alpha, beta)
        interval = crossing_interval(F, quadratic=ctx.quadratic, tol=ctx.tol)
        scanned = scan_crossings(F, points_per_window=SCAN_POINTS, tol=ctx.tol)
        worst = max(worst, _rel_err(interval.t_minus, scanned[0]), _rel_err(interval.t_plus, scanned[1]))
    return worst <= ctx.tol.crossing_gap, {"cells": len(ctx.cells), "max_rel_error": worst}


def check_certificate(ctx: SuiteContext) -> tuple[bool, dict]:
    """H(A + tB0) stays below H(A) without kinks on the crossing interval"""
    F = SingularForm.sing(2.0, 4.0)
    interval = crossing_interval(F, quadratic=ctx.quadratic, tol=ctx.tol)
    report = concavity_certificate(F, interval=interval, tol=ctx.tol)
    return report.passed, report.to_dict()


def check_asymptotics(ctx: SuiteContext) -> tuple[bool, dict]:
    """t_plus -> 2(alpha - 1) and t_minus -> -infinity as beta grows"""
    F = SingularForm.sing(2.0, 1e6)
    interval = crossing_interval(F, quadratic=ctx.quadratic, tol=ctx.tol)
    passed = _rel_err(interval.t_plus, 2.0) <= 1e-3 and interval.t_minus < -1e3
    return passed, {"t_plus": interval.t_plus, "t_minus": interval.t_minus}


def check_strict_drop(ctx: SuiteContext) -> tuple[bool, dict]:
    """Both laminate phases are less distorted than A and the energy gap is positive"""
    identity = EnergySpec()
    worst_margin, worst_delta = math.inf, math.inf
    for alpha, beta in ctx.cells:
        F = SingularForm.sing(alpha, beta)
        interval = crossing_interval(F, quadratic=ctx.quadratic, tol=ctx.tol)
        worst_margin = min(worst_margin, beta - max(interval.h_minus, interval.h_plus))
        worst_delta = min(worst_delta, energy_gap(F.diagonal, identity, tol=ctx.tol))
    return worst_margin > 0 and worst_delta > 0, {"min_margin": worst_margin, "min_energy_gap": worst_delta}


def check_jump_bound(ctx: SuiteContext) -> tuple[bool, dict]:
    """Every jump ratio lies in (1, sqrt 2]; the maximum grows along the weak path"""
    strong = sweep_cells(regime_strong(), workers=ctx.workers, tol=ctx.tol)
    weak = extend_until(
        ks=DEFAULT_WEAK_KS,
        alphas=DEFAULT_WEAK_ALPHAS,
        threshold=EXTEND_THRESHOLD,
        workers=ctx.workers,
        tol=ctx.tol,
    )
    top_alpha = max(row.alpha for row in weak.rows) if weak.rows else math.nan
    path = [row for row in weak.rows if row.alpha == top_alpha]
    best = max(strong.rows + weak.rows, key=lambda row: row.ratio, default=None)
    passed = (
        strong.within_bound
        and weak.within_bound
        and not strong.failures
        and not weak.failures
        and ratio_is_monotone(path, "beta")
    )
    return passed, {
        "bound": SQRT2,
        "max_ratio": best.ratio if best else None,
        "max_cell": [best.alpha, best.beta] if best else None,
        "reached_threshold": bool(best and best.ratio >= EXTEND_THRESHOLD),
        "strong": strong.summary(),
        "weak": weak.summary(),
    }


def check_angle_limits(ctx: SuiteContext) -> tuple[bool, dict]:
    """Lamination angle limits of the strong and weak regimes"""
    strong = lamination_angle(SingularForm.sing(2.0, 1e6), ctx.tol)
    diagonal = lamination_angle(SingularForm.sing(1e6, 1e6 + 1.0), ctx.tol)
    errors = {"strong": abs(strong - math.pi / 4.0), "alpha_plus_one": abs(diagonal - math.acos(1.0 / math.sqrt(6.0)))}
    k_errors = {}
    for k in (0.25, 0.5, 0.75):
        angle = lamination_angle(SingularForm.sing(1e6, 1e6 / k), ctx.tol)
        k_errors[str(k)] = abs(angle - lamination_angle_limit(k))
    passed = max(errors.values()) <= 1e-3 and max(k_errors.values()) <= 1e-6
    return passed, {"limit_errors": errors, "k_errors": k_errors}


def check_laminate(ctx: SuiteContext) -> tuple[bool, dict]:
    """Uniform convergence, two-valued gradients and j-independent distortion"""
    L = optimal_laminate(np.diag([1.0, 2.0, 4.0]), tol=ctx.tol)
    jump = laminate_distortion(L, tol=ctx.tol)
    rows = convergence_study(L, [1, 10, 100], samples=10_000, seed=ctx.seed)
    converges = all(row.max_deviation <= row.bound for row in rows)
    j_independent = all(abs(row.h_fj - jump.h_laminate) <= 1e-12 * jump.h_laminate for row in rows)

    x = cube_samples(10_000, ctx.seed)
    grads = laminate_gradient(L.with_frequency(10), x)
    to_plus = np.max(np.abs(grads - L.gradient_plus), axis=(1, 2))
    to_minus = np.max(np.abs(grads - L.gradient_minus), axis=(1, 2))
    two_valued = float(np.max(np.minimum(to_plus, to_minus)))

    fraction = convergence_study(L, [100], samples=100_000, seed=ctx.seed)[0].fraction_plus_sampled
    slabs = slab_distortion_check(L.with_frequency(10), tol=ctx.tol)
    slab_error = max(abs(row["sampled"] - row["exact"]) / row["exact"] for row in slabs)
    hadamard = hadamard_jump(L)

    passed = (
        converges
        and j_independent
        and two_valued <= 1e-12
        and abs(fraction - jump.fraction_plus) <= 0.01
        and slab_error <= 0.02
        and hadamard.rank_one
    )
    return passed, {
        "convergence": [row.to_dict() for row in rows],
        "jump": jump.to_dict(),
        "two_valued_error": two_valued,
        "fraction_plus_sampled": fraction,
        "fraction_plus": jump.fraction_plus,
        "slab_max_rel_error": slab_error,
        "hadamard": hadamard.to_dict(),
    }


def check_invariance(ctx: SuiteContext) -> tuple[bool, dict]:
    """H is invariant under scaling, orthogonal factors and inversion"""
    rng = ctx.rng()
    worst = {"scale": 0.0, "orthogonal": 0.0, "inverse": 0.0}
    for _ in range(100):
        sigma = np.sort(rng.uniform(1.0, 50.0, size=3))
        A = random_orthogonal(rng) @ np.diag(sigma) @ random_orthogonal(rng)
        h = distortion_ratio(A)
        c = rng.uniform(-10.0, 10.0) or 1.0
        worst["scale"] = max(worst["scale"], _rel_err(distortion_ratio(c * A), h))
        Q = random_orthogonal(rng)
        worst["orthogonal"] = max(
            worst["orthogonal"], _rel_err(distortion_ratio(Q @ A), h), _rel_err(distortion_ratio(A @ Q), h)
        )
        worst["inverse"] = max(worst["inverse"], _rel_err(distortion_ratio(np.linalg.inv(A)), h))
    return max(worst.values()) <= 1e-9, {"max_rel_errors": worst}


CHECKS: list[tuple[str, Callable[[SuiteContext], tuple[bool, dict]]]] = [
    ("distortion", check_distortion),
    ("eigensolvers", check_eigensolvers),
    ("optimal_direction", check_optimal_direction),
    ("grid_oracle", check_grid_oracle),
    ("landscape_symmetry", check_landscape_symmetry),
    ("charpoly_degree", check_charpoly_degree),
    ("branch_formulas", check_branch_formulas),
    ("crossings", check_crossings),
    ("certificate", check_certificate),
    ("asymptotics", check_asymptotics),
    ("strict_drop", check_strict_drop),
    ("jump_bound", check_jump_bound),
    ("angle_limits", check_angle_limits),
    ("laminate", check_laminate),
    ("invariance", check_invariance),
]


def grid_cells(alphas: Optional[Sequence[float]], betas: Optional[Sequence[float]]) -> list[tuple[float, float]]:
    """Cells with 1 < alpha < beta, alpha-major"""
    alphas = DEFAULT_GRID_ALPHAS if alphas is None else alphas
    betas = DEFAULT_GRID_BETAS if betas is None else betas
    return [(float(a), float(b)) for a in alphas for b in betas if 1.0 < a < b]


def run_check(name: str, fn: Callable[[SuiteContext], tuple[bool, dict]], ctx: SuiteContext) -> CheckResult:
    start = time.perf_counter()
    try:
        passed, detail = fn(ctx)
        error = None
    except Exception as e:
        logger.error(f"Check '{name}' raised {type(e).__name__}: {e}")
        passed, detail, error = False, {}, f"{type(e).__name__}: {e}"
    seconds = time.perf_counter() - start
    if not passed and error is None:
        error = "check failed"
    logger.info(f"Check '{name}': {'passed' if passed else 'FAILED'} in {seconds:.2f}s")
    return CheckResult(name=name, passed=bool(passed), seconds=seconds, detail=detail, error=error)


def run_suite(
    alphas: Optional[Sequence[float]] = None,
    betas: Optional[Sequence[float]] = None,
    inject_fault: bool = False,
    only: Optional[Sequence[str]] = None,
    seed: int = 0,
    workers: Optional[int] = None,
    oracle_resolution: tuple[int, int] = (512, 128),
    tol: Optional[Tolerances] = None,
    listener: Optional[Callable[[BaseEvent], Any]] = None,
) -> VerifyReport:
    """Run the acceptance checks

    Args:
        alphas, betas: Grid for the per-cell checks (defaults to a 10x10 grid in (1, 20])
        inject_fault: Replace the crossing quadratic and branch cubic with perturbed versions
        only: Restrict to the named checks (run in suite order)
        seed: Seed for the random checks
        workers: Thread count for the grid oracle and sweeps
        oracle_resolution: (n_theta, n_rs) of the grid oracle
        tol: Tolerance profile
        listener: Callable receiving report events (e.g. a renderer's ``process``)

    Returns:
        VerifyReport with one CheckResult per check
    """
    tol = tol or get_tolerances()
    ctx = SuiteContext(
        tol=tol,
        cells=grid_cells(alphas, betas),
        seed=seed,
        workers=workers,
        oracle_resolution=oracle_resolution,
    )
    if inject_fault:
        logger.warning("Running with perturbed closed-form coefficients")
        ctx.quadratic = faulty_quadratic
        ctx.cubic = faulty_cubic

    emit = listener or (lambda event: None)
    selected = [(name, fn) for name, fn in CHECKS if only is None or name in only]
    emit(StageEvent(stage="verify", status="start", detail=f"{len(selected)} checks, {len(ctx.cells)} grid cells"))

    report = VerifyReport()
    for name, fn in selected:
        result = run_check(name, fn, ctx)
        report.checks.append(result)
        emit(CheckEvent(name=name, passed=result.passed, seconds=result.seconds, detail=result.detail, error=result.error))

    emit(SummaryEvent(passed=report.passed, total=len(report.checks), failures=report.failures, result=report))
    return report


__all__ = [
    "CHECKS",
    "CheckResult",
    "VerifyReport",
    "SuiteContext",
    "faulty_quadratic",
    "faulty_cubic",
    "grid_cells",
    "run_check",
    "run_suite",
]
