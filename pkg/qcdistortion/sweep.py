"""Parameter sweeps of the distortion jump over (alpha, beta)

Each cell builds the optimal laminate for Sing(1, alpha, beta) and records
the jump ratio, the lamination angle and the phase fraction. Cells are
independent; failures are recorded and the sweep continues.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .config import Tolerances, get_thread_count, get_tolerances
from .crossing import crossing_interval
from .errors import DistortionError
from .laminate import lamination_angle, regime_weak
from .mat_core import det3
from .models import SingularForm
from .rank_one import optimal_direction

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
JUMP_BOUND_SLACK = 1e-9
EXTEND_THRESHOLD = 1.35


@dataclass(frozen=True)
class SweepRow:
    """One (alpha, beta) cell of a jump sweep"""

    alpha: float
    beta: float
    t_minus: float
    t_plus: float
    h_A: float
    h_laminate: float
    ratio: float
    angle_rad: float
    fraction_plus: float

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "t_minus": self.t_minus,
            "t_plus": self.t_plus,
            "h_A": self.h_A,
            "h_laminate": self.h_laminate,
            "ratio": self.ratio,
            "angle_rad": self.angle_rad,
            "fraction_plus": self.fraction_plus,
        }


@dataclass
class SweepResult:
    """Rows in cell order, per-cell failures and the maximum ratio"""

    rows: list[SweepRow] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)

    @property
    def maximum(self) -> Optional[SweepRow]:
        if not self.rows:
            return None
        return max(self.rows, key=lambda row: row.ratio)

    @property
    def within_bound(self) -> bool:
        return all(1.0 < row.ratio <= SQRT2 + JUMP_BOUND_SLACK for row in self.rows)

    def extend(self, other: "SweepResult") -> None:
        self.rows.extend(other.rows)
        self.failures.extend(other.failures)

    def summary(self) -> dict:
        best = self.maximum
        return {
            "cells": len(self.rows) + len(self.failures),
            "failures": len(self.failures),
            "max_ratio": best.ratio if best else None,
            "max_alpha": best.alpha if best else None,
            "max_beta": best.beta if best else None,
            "within_bound": self.within_bound,
        }


def evaluate_cell(alpha: float, beta: float, tol: Optional[Tolerances] = None) -> SweepRow:
    """Jump data for Sing(1, alpha, beta)

    Raises:
        DistortionError: If the cell is degenerate or a check fails
    """
    tol = tol or get_tolerances()
    F = SingularForm.sing(alpha, beta)
    interval = crossing_interval(F, tol=tol)

    B0 = optimal_direction(F, tol).matrix()
    for t in (interval.t_minus, interval.t_plus):
        if not det3(F.diagonal + t * B0) > 0:
            raise DistortionError(f"Laminate phase at t={t:g} is not orientation preserving")

    h_lam = max(interval.h_minus, interval.h_plus)
    return SweepRow(
        alpha=float(alpha),
        beta=float(beta),
        t_minus=interval.t_minus,
        t_plus=interval.t_plus,
        h_A=F.beta,
        h_laminate=h_lam,
        ratio=F.beta / h_lam,
        angle_rad=lamination_angle(F, tol),
        fraction_plus=interval.fraction_plus,
    )


def _run_cell(cell: tuple[float, float], tol: Tolerances):
    alpha, beta = cell
    try:
        return evaluate_cell(alpha, beta, tol), None
    except DistortionError as e:
        logger.warning(f"Sweep cell (alpha={alpha:g}, beta={beta:g}) failed: {e}")
        return None, {"alpha": alpha, "beta": beta, "error": type(e).__name__, "message": str(e)}


def sweep_cells(
    cells: Sequence[tuple[float, float]],
    workers: Optional[int] = None,
    tol: Optional[Tolerances] = None,
) -> SweepResult:
    """Evaluate cells in order; output order never depends on ``workers``"""
    tol = tol or get_tolerances()
    workers = workers or get_thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda cell: _run_cell(cell, tol), cells))
    else:
        outcomes = [_run_cell(cell, tol) for cell in cells]

    result = SweepResult()
    for row, failure in outcomes:
        if row is not None:
            result.rows.append(row)
        else:
            result.failures.append(failure)
    best = result.maximum
    if best is not None:
        logger.info(f"Sweep of {len(cells)} cells: max ratio {best.ratio:.12g} at ({best.alpha:g}, {best.beta:g})")
    return result


def jump_sweep(
    alphas: Sequence[float],
    betas: Sequence[float],
    workers: Optional[int] = None,
    tol: Optional[Tolerances] = None,
) -> SweepResult:
    """Alpha-major sweep over the grid; cells with alpha > beta are skipped"""
    cells = [(float(a), float(b)) for a in alphas for b in betas if a <= b]
    skipped = len(alphas) * len(betas) - len(cells)
    if skipped:
        logger.debug(f"Skipped {skipped} cells with alpha > beta")
    return sweep_cells(cells, workers=workers, tol=tol)


def extend_until(
    ks: Sequence[float],
    alphas: Sequence[float],
    threshold: float = EXTEND_THRESHOLD,
    min_k: float = 1e-3,
    workers: Optional[int] = None,
    tol: Optional[Tolerances] = None,
) -> SweepResult:
    """Weak-regime sweep, adding smaller k until the maximum reaches ``threshold``"""
    result = sweep_cells(regime_weak(ks, alphas), workers=workers, tol=tol)
    k = min(ks)
    while (result.maximum is None or result.maximum.ratio < threshold) and k / 10.0 >= min_k:
        k /= 10.0
        logger.info(f"Maximum ratio below {threshold}, extending weak regime to k={k:g}")
        result.extend(sweep_cells(regime_weak([k], alphas), workers=workers, tol=tol))
    return result


def ratio_is_monotone(rows: Sequence[SweepRow], key: str) -> bool:
    """Whether the ratio is monotone (either direction) in ``key`` along rows"""
    ordered = sorted(rows, key=lambda row: getattr(row, key))
    ratios = np.array([row.ratio for row in ordered])
    steps = np.diff(ratios)
    return bool(np.all(steps >= -1e-12) or np.all(steps <= 1e-12))


__all__ = [
    "SQRT2",
    "SweepRow",
    "SweepResult",
    "evaluate_cell",
    "sweep_cells",
    "jump_sweep",
    "extend_until",
    "ratio_is_monotone",
]
