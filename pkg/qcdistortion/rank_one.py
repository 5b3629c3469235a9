"""Rank-one perturbations of the linear distortion

Directional derivatives of t -> H(A + tB) for B = u (x) v, the optimal
direction B0 in closed form for Sing(1, alpha, beta), a brute-force grid
oracle for the constrained problem it solves, and the diag(1, c, c^2)
demonstration.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import Tolerances, get_thread_count, get_tolerances
from .distortion import distortion_ratio
from .errors import DegenerateSpectrumError, DistortionError, InvalidInputError, NonsmoothPointError
from .mat_core import as_mat3, gram_eigen, require_distinct
from .models import DirectionalSeries, RankOneDir, SingularForm, SphericalParam

logger = logging.getLogger(__name__)

MIN_ORACLE_THETA = 64
MIN_ORACLE_RS = 32
ORACLE_D1_TOL = 1e-6


def _gram_derivatives(A: np.ndarray, B: np.ndarray, tol: Tolerances):
    """First and second t-derivatives at 0 of the extreme eigenvalues of (A+tB)^T (A+tB)"""
    eig = gram_eigen(A, tol=tol)
    lam = eig.values
    W = eig.vectors
    gap_scale = tol.degenerate * max(lam[2], np.finfo(float).tiny)
    if lam[1] - lam[0] <= gap_scale or lam[2] - lam[1] <= gap_scale:
        raise NonsmoothPointError(f"Extreme Gram eigenvalue is repeated: {lam.tolist()}")

    X1 = A.T @ B + B.T @ A
    X2 = B.T @ B
    Y1 = W.T @ X1 @ W
    Y2 = W.T @ X2 @ W

    first = np.empty(3)
    second = np.empty(3)
    for k in (0, 2):
        first[k] = Y1[k, k]
        coupling = sum(Y1[m, k] ** 2 / (lam[k] - lam[m]) for m in range(3) if m != k)
        second[k] = 2.0 * (Y2[k, k] + coupling)
    return lam, first, second


def _richardson(fn, h1: float, h2: float) -> float:
    ratio = (h1 / h2) ** 2
    return (ratio * fn(h2) - fn(h1)) / (ratio - 1.0)


def finite_difference_series(A, B: RankOneDir, steps: tuple[float, float], second_steps: tuple[float, float]):
    """Richardson-extrapolated central differences of t -> H(A + tB) at 0"""
    A = as_mat3(A)
    Bm = B.matrix()

    def h_at(t: float) -> float:
        return distortion_ratio(A + t * Bm)

    h0 = h_at(0.0)
    d1 = _richardson(lambda h: (h_at(h) - h_at(-h)) / (2.0 * h), *steps)
    d2 = _richardson(lambda h: (h_at(h) - 2.0 * h0 + h_at(-h)) / (h * h), *second_steps)
    return d1, d2


def directional_series(
    A,
    B: RankOneDir,
    check_fd: bool = True,
    tol: Optional[Tolerances] = None,
) -> DirectionalSeries:
    """Taylor data of t -> H(A + tB) at t = 0

    Derivatives come from perturbation theory of the simple extreme
    eigenvalues of the symmetric pencil (A + tB)^T (A + tB). With
    g = log H they are d1 = H g' and d2 = H (g'' + g'^2).

    Args:
        A: Deformation gradient
        B: Rank-one direction
        check_fd: Cross-check against central finite differences
        tol: Tolerance profile

    Returns:
        DirectionalSeries; ``well_conditioned`` is False if the finite
        differences disagree beyond the tolerance

    Raises:
        NonsmoothPointError: If the smallest or largest Gram eigenvalue is repeated
    """
    tol = tol or get_tolerances()
    A = as_mat3(A)
    lam, first, second = _gram_derivatives(A, B.matrix(), tol)

    h0 = distortion_ratio(A)
    g1 = 0.5 * (first[2] / lam[2] - first[0] / lam[0])
    g2 = 0.5 * (second[2] / lam[2] - (first[2] / lam[2]) ** 2 - second[0] / lam[0] + (first[0] / lam[0]) ** 2)
    d1 = h0 * g1
    d2 = h0 * (g2 + g1 * g1)

    if not check_fd:
        return DirectionalSeries(h0=h0, d1=d1, d2=d2)

    fd_d1, fd_d2 = finite_difference_series(A, B, tol.fd_steps, tol.fd_steps_second)
    floor = 1e-3 * h0
    ok = all(
        abs(a - b) <= tol.fd_agreement * max(abs(a), abs(b), floor) for a, b in ((d1, fd_d1), (d2, fd_d2))
    )
    if not ok:
        logger.warning(
            f"Perturbation and finite-difference derivatives disagree: "
            f"d1={d1:.12g} vs {fd_d1:.12g}, d2={d2:.12g} vs {fd_d2:.12g}"
        )
    return DirectionalSeries(h0=h0, d1=d1, d2=d2, fd_d1=fd_d1, fd_d2=fd_d2, well_conditioned=ok)


def closed_form_q(alpha: float, beta: float) -> float:
    """Second-order coefficient q with H(A + tB0) = beta - q t^2 + O(t^3)"""
    S = alpha**2 + alpha + beta**2 + (alpha - 1.0) * beta + 1.0
    return (beta - 1.0) ** 3 * beta / (4.0 * (alpha + 1.0) * (beta + 1.0) * (alpha + beta) * S)


def optimal_components(alpha: float, beta: float) -> tuple[float, float, float]:
    """Unsigned components (p, m, q) of the optimal direction, normalized"""
    S = alpha**2 + alpha + beta**2 + (alpha - 1.0) * beta + 1.0
    norm = 1.0 / (math.sqrt(2.0) * math.sqrt(S))
    p = (beta - 1.0) / math.sqrt(beta + 1.0)
    m = math.sqrt(2.0 * alpha**2 + 2.0 * (beta + 1.0) * alpha + beta**2 + 1.0)
    q = (beta - 1.0) * math.sqrt(beta) / math.sqrt(beta + 1.0)
    return norm * p, norm * m, norm * q


def optimal_direction(F: SingularForm, tol: Optional[Tolerances] = None) -> RankOneDir:
    """The rank-one direction B0 = u0 (x) v0 that lowers H fastest

    Directions are in the normalized frame of diag(1, alpha, beta). u0 takes
    "+" on its second component and v0 takes "-"; the opposite assignment is
    tried if the postconditions fail.

    Args:
        F: Singular form with 1 < alpha < beta
        tol: Tolerance profile

    Returns:
        RankOneDir with d1 = 0 and d2 < 0 at diag(1, alpha, beta)

    Raises:
        DegenerateSpectrumError: If two singular values coincide

    Example:
        >>> d = optimal_direction(SingularForm.sing(2, 4))
        >>> np.allclose(d.u * math.sqrt(30), [1, 5, 2])
        True
    """
    tol = tol or get_tolerances()
    require_distinct(F, tol)
    p, m, q = optimal_components(F.alpha, F.beta)
    D = F.diagonal

    for sign in (1.0, -1.0):
        candidate = RankOneDir(np.array([p, sign * m, q]), np.array([p, -sign * m, q]))
        series = directional_series(D, candidate, check_fd=False, tol=tol)
        if abs(series.d1) <= 1e-8 * max(1.0, series.h0) and series.d2 < 0:
            logger.debug(f"Optimal direction for Sing(1, {F.alpha:g}, {F.beta:g}): d2={series.d2:.12g}")
            return candidate
        logger.debug(f"Sign choice {sign:+.0f} rejected: d1={series.d1:.3g}, d2={series.d2:.3g}")

    raise DegenerateSpectrumError(
        f"No rank-one direction lowers H at Sing(1, {F.alpha:g}, {F.beta:g}) to second order"
    )


def transport_direction(F: SingularForm, d: RankOneDir) -> RankOneDir:
    """Map a normalized-frame direction to the frame of A = s Q diag(1, alpha, beta) R

    A + t' (R^T u) (x) (Q v) = s Q (diag(1, alpha, beta) + (t'/s) u (x) v) R,
    so the pencil parameter scales by ``F.scale``.
    """
    return RankOneDir(F.R.T @ d.u, F.Q @ d.v)


def solve_constraint_s(F: SingularForm, r, theta1, theta2):
    """Eliminate s from u3 v3 = beta u1 v1 (the first-order condition d1 = 0)

    Works on scalars or broadcastable arrays; infeasible points give NaN.
    """
    r = np.asarray(r, dtype=float)
    b = F.beta * np.sqrt(np.clip(1.0 - r * r, 0.0, None))
    c = r * np.sin(theta1) * np.sin(theta2)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(c > 0, b / np.sqrt(b * b + c * c), np.nan)
    return s if s.ndim else float(s)


def _series_batch(F: SingularForm, u: np.ndarray, v: np.ndarray):
    """Vectorized (d1, d2, Q) at diag(1, alpha, beta) for directions of shape (..., 3)

    With A diagonal the Gram eigenvectors at t = 0 are the coordinate axes,
    so the perturbation sums reduce to closed expressions in the components.
    """
    a = np.array([1.0, F.alpha, F.beta])
    lam = a * a

    def x1(i, j):
        return a[i] * v[..., i] * u[..., j] + a[j] * v[..., j] * u[..., i]

    l1p = x1(0, 0)
    l3p = x1(2, 2)
    l1pp = 2.0 * (u[..., 0] ** 2 + x1(1, 0) ** 2 / (lam[0] - lam[1]) + x1(2, 0) ** 2 / (lam[0] - lam[2]))
    l3pp = 2.0 * (u[..., 2] ** 2 + x1(0, 2) ** 2 / (lam[2] - lam[0]) + x1(1, 2) ** 2 / (lam[2] - lam[1]))

    h0 = F.beta
    g1 = 0.5 * (l3p / lam[2] - l1p)
    g2 = 0.5 * (l3pp / lam[2] - (l3p / lam[2]) ** 2 - l1pp + l1p**2)
    d1 = h0 * g1
    d2 = h0 * (g2 + g1 * g1)
    objective = 0.5 * l3pp - lam[2] * 0.5 * l1pp
    return d1, d2, objective


def _vectors(r, s, theta1, theta2):
    u = np.stack(np.broadcast_arrays(np.sqrt(1.0 - r * r), r * np.cos(theta1), r * np.sin(theta1)), axis=-1)
    v = np.stack(np.broadcast_arrays(np.sqrt(1.0 - s * s), s * np.cos(theta2), s * np.sin(theta2)), axis=-1)
    return u, v


def q_objective(F: SingularForm, param: SphericalParam) -> float:
    """nu2 - beta^2 mu2, the t^2 coefficient of lam_max - beta^2 lam_min

    On the constraint set d1 = 0 this equals beta * d2.
    """
    u, v = param.u, param.v
    _, _, objective = _series_batch(F, u, v)
    return float(objective)


@dataclass(frozen=True)
class OracleResult:
    """Best feasible direction found by the grid oracle"""

    param: SphericalParam
    direction: RankOneDir
    series: DirectionalSeries
    feasible: int
    evaluated: int

    def to_dict(self) -> dict:
        return {
            "r": self.param.r,
            "s": self.param.s,
            "theta1": self.param.theta1,
            "theta2": self.param.theta2,
            "direction": self.direction.to_dict(),
            "series": self.series.to_dict(),
            "feasible": self.feasible,
            "evaluated": self.evaluated,
        }


def _oracle_grids(n_theta: int, n_rs: int):
    thetas = math.pi * (np.arange(n_theta) + 0.5) / n_theta
    rs = np.sin(0.5 * math.pi * (np.arange(n_rs) + 0.5) / n_rs)
    return thetas, rs


def _oracle_chunk(F: SingularForm, theta1: float, thetas: np.ndarray, rs: np.ndarray):
    """Best (d2, theta2 index, r index, s) for one theta1 row, or None"""
    T2, R = np.meshgrid(thetas, rs, indexing="ij")
    S = solve_constraint_s(F, R, theta1, T2)
    feasible = np.isfinite(S)
    if not np.any(feasible):
        return None, 0
    u, v = _vectors(R, np.where(feasible, S, 0.0), theta1, T2)
    d1, d2, _ = _series_batch(F, u, v)
    mask = feasible & (np.abs(d1) <= ORACLE_D1_TOL)
    count = int(np.count_nonzero(mask))
    if count == 0:
        return None, 0
    masked = np.where(mask, d2, np.inf)
    flat = int(np.argmin(masked))
    i, k = np.unravel_index(flat, masked.shape)
    return (float(masked[i, k]), int(i), int(k), float(S[i, k])), count


def grid_oracle(
    F: SingularForm,
    n_theta: int = 512,
    n_rs: int = 128,
    workers: Optional[int] = None,
    tol: Optional[Tolerances] = None,
) -> OracleResult:
    """Brute-force search of the constrained second-order problem

    Sweeps theta1, theta2 over (0, pi) and r over (0, 1); s is eliminated with
    the first-order constraint. Among directions with |d1| <= 1e-6 the one with
    the smallest d2 is returned. Rows of theta1 are evaluated independently
    and reduced in index order, so the result does not depend on ``workers``.

    Args:
        F: Singular form with 1 < alpha < beta
        n_theta: Angle resolution (>= 64)
        n_rs: Radius resolution (>= 32)
        workers: Thread count (defaults to QCD_THREADS)
        tol: Tolerance profile

    Returns:
        OracleResult with the best direction and its DirectionalSeries
    """
    tol = tol or get_tolerances()
    if n_theta < MIN_ORACLE_THETA or n_rs < MIN_ORACLE_RS:
        raise InvalidInputError(
            f"Grid oracle needs n_theta >= {MIN_ORACLE_THETA} and n_rs >= {MIN_ORACLE_RS}, got ({n_theta}, {n_rs})"
        )
    require_distinct(F, tol)
    thetas, rs = _oracle_grids(n_theta, n_rs)
    workers = workers or get_thread_count()

    def run(theta1):
        return _oracle_chunk(F, float(theta1), thetas, rs)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(run, thetas))
    else:
        chunks = [run(theta1) for theta1 in thetas]

    best = None
    feasible = 0
    for row, (found, count) in enumerate(chunks):
        feasible += count
        if found is not None and (best is None or found[0] < best[1][0]):
            best = (row, found)

    if best is None:
        raise DistortionError("Grid oracle found no feasible direction")

    row, (d2, i, k, s) = best
    param = SphericalParam(r=float(rs[k]), s=min(s, 1.0), theta1=float(thetas[row]), theta2=float(thetas[i]))
    direction = param.direction()
    series = directional_series(F.diagonal, direction, check_fd=False, tol=tol)
    logger.info(
        f"Grid oracle {n_theta}x{n_rs} at Sing(1, {F.alpha:g}, {F.beta:g}): "
        f"d2={series.d2:.10g} at theta1={param.theta1:.6f}, theta2={param.theta2:.6f}"
    )
    return OracleResult(param, direction, series, feasible, n_theta * n_theta * n_rs)


def q_landscape(
    F: SingularForm, n_theta: int = 64, r: Optional[float] = None, tol: Optional[Tolerances] = None
) -> list[dict]:
    """Constrained objective over (theta1, theta2) at a fixed first radius

    The radius defaults to that of the optimal direction and s is solved from
    the first-order constraint. Infeasible cells are skipped.
    """
    if r is None:
        u0 = optimal_direction(F, tol).u
        r = float(np.hypot(u0[1], u0[2]))
    thetas = math.pi * (np.arange(n_theta) + 0.5) / n_theta
    T1, T2 = np.meshgrid(thetas, thetas, indexing="ij")
    S = solve_constraint_s(F, np.full_like(T1, r), T1, T2)
    feasible = np.isfinite(S)
    u, v = _vectors(np.full_like(T1, r), np.where(feasible, S, 0.0), T1, T2)
    _, _, objective = _series_batch(F, u, v)

    rows = []
    for i in range(n_theta):
        for k in range(n_theta):
            if feasible[i, k]:
                rows.append({"theta1": float(T1[i, k]), "theta2": float(T2[i, k]), "Q": float(objective[i, k])})
    return rows


def iwaniec_example(c: float, tol: Optional[Tolerances] = None) -> tuple[np.ndarray, dict]:
    """A_c = diag(1, c, c^2) and a record of H decreasing along B0

    Returns:
        (A_c, record) where the record holds H(A_c), the Taylor data along
        B0, a step t with H(A_c + t B0) < H(A_c) and the laminate jump report
    """
    from .laminate import laminate_distortion, optimal_laminate

    tol = tol or get_tolerances()
    if not (math.isfinite(c) and c > 1.0):
        raise InvalidInputError(f"Demonstration parameter must satisfy c > 1, got {c}")

    A = np.diag([1.0, c, c * c])
    F = SingularForm.sing(c, c * c)
    B0 = optimal_direction(F, tol)
    series = directional_series(A, B0, tol=tol)

    t = 0.5
    h_t = distortion_ratio(A + t * B0.matrix())
    while h_t >= series.h0 and t > 1e-8:
        t *= 0.5
        h_t = distortion_ratio(A + t * B0.matrix())

    report = laminate_distortion(optimal_laminate(A, tol=tol), tol=tol)
    record = {
        "c": c,
        "h_A": series.h0,
        "d1": series.d1,
        "d2": series.d2,
        "t": t,
        "h_t": h_t,
        "decreases": h_t < series.h0,
        "jump": report.to_dict(),
    }
    logger.info(f"diag(1, {c:g}, {c * c:g}): H={series.h0:g}, H at t={t:g} is {h_t:.12g}")
    return A, record


__all__ = [
    "directional_series",
    "finite_difference_series",
    "closed_form_q",
    "optimal_components",
    "optimal_direction",
    "transport_direction",
    "solve_constraint_s",
    "q_objective",
    "OracleResult",
    "grid_oracle",
    "q_landscape",
    "iwaniec_example",
]
