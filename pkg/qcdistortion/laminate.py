"""Sawtooth laminates and the distortion jump

The laminate f_j(x) = A x + (1/j) a(j u . x) v has a gradient taking only the
two values A + t_minus B0 and A + t_plus B0, both less distorted than A,
while f_j converges uniformly to the linear map x -> A x.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import Tolerances, get_tolerances
from .crossing import crossing_interval
from .distortion import distortion_batch, distortion_ratio, sampled_distortion
from .errors import CrossingError, InvalidInputError
from .mat_core import as_mat3, require_distinct, svd3
from .models import JumpReport, LaminateSpec, Sawtooth, SingularForm
from .rank_one import optimal_direction, transport_direction

logger = logging.getLogger(__name__)

DEFAULT_STRONG_BETAS = tuple(10.0**k for k in range(1, 7))
DEFAULT_WEAK_KS = (0.1, 0.25, 0.5, 0.75, 0.9)
DEFAULT_WEAK_ALPHAS = tuple(10.0**k for k in range(1, 7))


def _phase(s: Sawtooth, r):
    """Position within the period starting at the peak r = 1/t_minus"""
    return np.mod(np.asarray(r, dtype=float) - 1.0 / s.t_minus, s.period)


def sawtooth_eval(s: Sawtooth, r):
    """a(r): t_minus r on [1/t_minus, 0], t_plus r on [0, 1/t_plus], extended periodically"""
    phi = _phase(s, r)
    falling = phi < 1.0 / abs(s.t_minus)
    a = np.where(falling, 1.0 + s.t_minus * phi, s.t_plus * (phi - 1.0 / abs(s.t_minus)))
    return float(a) if a.ndim == 0 else a


def sawtooth_slope(s: Sawtooth, r):
    """a'(r); at kinks the right-hand slope"""
    phi = _phase(s, r)
    slope = np.where(phi < 1.0 / abs(s.t_minus), s.t_minus, s.t_plus)
    return float(slope) if slope.ndim == 0 else slope


def optimal_laminate(A, j: int = 1, tol: Optional[Tolerances] = None) -> LaminateSpec:
    """Laminate built from B0 and [t_minus, t_plus] in the frame of A

    Raises:
        DegenerateSpectrumError: If A has a repeated singular value
    """
    tol = tol or get_tolerances()
    A = as_mat3(A)
    F = svd3(A, tol=tol)
    require_distinct(F, tol)
    B0 = transport_direction(F, optimal_direction(F, tol))
    interval = crossing_interval(F, tol=tol)
    return LaminateSpec(A=A, B0=B0, t_minus=F.scale * interval.t_minus, t_plus=F.scale * interval.t_plus, j=j)


def laminate_eval(L: LaminateSpec, x) -> np.ndarray:
    """f_j(x) = A x + (1/j) a(j u . x) v for a point or an (N, 3) array"""
    x = np.asarray(x, dtype=float)
    phase = L.j * (x @ L.B0.u)
    a = np.asarray(sawtooth_eval(L.sawtooth, phase))
    return x @ L.A.T + np.multiply.outer(a / L.j, L.B0.v)


def laminate_gradient(L: LaminateSpec, x) -> np.ndarray:
    """A + a'(j u . x) B0 for a point, or a stack of shape (N, 3, 3)"""
    x = np.asarray(x, dtype=float)
    slope = np.asarray(sawtooth_slope(L.sawtooth, L.j * (x @ L.B0.u)))
    return L.A + np.multiply.outer(slope, L.B0.matrix())


def phase_of(L: LaminateSpec, x) -> np.ndarray:
    """+1 on the t_plus phase, -1 on the t_minus phase"""
    x = np.asarray(x, dtype=float)
    slope = np.asarray(sawtooth_slope(L.sawtooth, L.j * (x @ L.B0.u)))
    return np.where(slope == L.t_plus, 1, -1)


def slab_width(L: LaminateSpec) -> float:
    """Thickness of the thinner phase slab"""
    return min(1.0 / L.t_plus, 1.0 / abs(L.t_minus)) / L.j


def slab_interior_points(L: LaminateSpec, n: int = 4) -> tuple[np.ndarray, np.ndarray]:
    """Slab mid-plane points alternating between the two phases

    Returns:
        (points of shape (n, 3), phases of shape (n,))
    """
    u = L.B0.u
    tangent = np.cross(u, [1.0, 0.0, 0.0])
    if np.linalg.norm(tangent) < 1e-6:
        tangent = np.cross(u, [0.0, 1.0, 0.0])
    tangent /= np.linalg.norm(tangent)

    period = L.sawtooth.period
    centres = {1: 0.5 / L.t_plus, -1: 0.5 / L.t_minus}
    points, phases = [], []
    for k in range(n):
        phase = 1 if k % 2 == 0 else -1
        r = centres[phase] + (k // 2) * period
        points.append((r / L.j) * u + 0.1 * (k % 3) * tangent)
        phases.append(phase)
    return np.array(points), np.array(phases)


def slab_distortion_check(L: LaminateSpec, n: int = 4, tol: Optional[Tolerances] = None) -> list[dict]:
    """Sampled pointwise distortion of f_j at slab interiors against the exact phase value"""
    tol = tol or get_tolerances()
    width = slab_width(L)
    radii = [1e-2 * width, 1e-3 * width]
    exact = {1: distortion_ratio(L.gradient_plus), -1: distortion_ratio(L.gradient_minus)}
    points, phases = slab_interior_points(L, n)
    rows = []
    for x, phase in zip(points, phases):
        sampled = sampled_distortion(lambda y: laminate_eval(L, y), x, radii, tol=tol)
        rows.append({"phase": int(phase), "sampled": sampled, "exact": exact[int(phase)]})
    return rows


def laminate_distortion(L: LaminateSpec, tol: Optional[Tolerances] = None) -> JumpReport:
    """Compare the distortion of the two laminate phases with that of A

    Raises:
        DegenerateSpectrumError: If A has a repeated singular value
        CrossingError: If the laminate is not strictly less distorted than A
    """
    tol = tol or get_tolerances()
    require_distinct(svd3(L.A, tol=tol), tol)
    h_A = distortion_ratio(L.A)
    h_plus = distortion_ratio(L.gradient_plus)
    h_minus = distortion_ratio(L.gradient_minus)
    h_lam = max(h_plus, h_minus)
    if not h_lam < h_A:
        raise CrossingError(f"Laminate distortion {h_lam:.12g} is not below H(A)={h_A:.12g}")
    return JumpReport(
        h_A=h_A,
        h_laminate=h_lam,
        ratio=h_A / h_lam,
        fraction_plus=L.sawtooth.fraction_plus,
        h_minus=h_minus,
        h_plus=h_plus,
    )


def lamination_angle(F: SingularForm, tol: Optional[Tolerances] = None) -> float:
    """Angle between the lamination normal u0 and the principal axis (0, 0, 1)

    cos(theta) = (beta - 1) sqrt(beta) / (sqrt(2) sqrt((beta + 1) S)) with
    S = alpha^2 + (alpha - 1) beta + alpha + beta^2 + 1.
    """
    require_distinct(F, tol)
    alpha, beta = F.alpha, F.beta
    S = alpha**2 + (alpha - 1.0) * beta + alpha + beta**2 + 1.0
    cos_theta = (beta - 1.0) * math.sqrt(beta) / (math.sqrt(2.0) * math.sqrt((beta + 1.0) * S))
    return math.acos(min(1.0, cos_theta))


def lamination_angle_limit(k: float) -> float:
    """Limit of the lamination angle along alpha = k beta, beta -> infinity"""
    return math.acos(1.0 / (math.sqrt(2.0) * math.sqrt(k * k + k + 1.0)))


@dataclass(frozen=True)
class HadamardJump:
    """Rank-one check of the jump between the two laminate gradients"""

    rank_one: bool
    normal: np.ndarray
    amplitude: float
    normal_error: float

    def to_dict(self) -> dict:
        return {
            "rank_one": self.rank_one,
            "normal": self.normal.tolist(),
            "amplitude": self.amplitude,
            "normal_error": self.normal_error,
        }


def hadamard_jump(L: LaminateSpec, tol: float = 1e-12) -> HadamardJump:
    """The gradients differ by (t_plus - t_minus) B0, a rank-one matrix with normal u"""
    jump = L.gradient_plus - L.gradient_minus
    U, s, Vt = np.linalg.svd(jump)
    normal = Vt[0] if np.dot(Vt[0], L.B0.u) >= 0 else -Vt[0]
    return HadamardJump(
        rank_one=bool(s[1] <= tol * s[0]),
        normal=normal,
        amplitude=float(s[0]),
        normal_error=float(np.linalg.norm(normal - L.B0.u)),
    )


def regime_strong(alpha: float = 2.0, betas: Optional[Sequence[float]] = None) -> list[tuple[float, float]]:
    """Strongly anisotropic path: alpha fixed, beta growing"""
    betas = DEFAULT_STRONG_BETAS if betas is None else betas
    return [(float(alpha), float(b)) for b in betas]


def regime_weak(
    ks: Optional[Sequence[float]] = None,
    alphas: Optional[Sequence[float]] = None,
) -> list[tuple[float, float]]:
    """Weakly anisotropic paths: beta = alpha / k for each k in (0, 1], alpha growing"""
    ks = DEFAULT_WEAK_KS if ks is None else ks
    alphas = DEFAULT_WEAK_ALPHAS if alphas is None else alphas
    for k in ks:
        if not 0.0 < k <= 1.0:
            raise InvalidInputError(f"Anisotropy ratio k must lie in (0, 1], got {k}")
    return [(float(a), float(a) / float(k)) for k in ks for a in alphas]


@dataclass(frozen=True)
class ConvergenceRow:
    """Uniform distance of f_j from A x and the distortion of f_j"""

    j: int
    max_deviation: float
    bound: float
    h_fj: float
    fraction_plus_sampled: float

    def to_dict(self) -> dict:
        return {
            "j": self.j,
            "max_deviation": self.max_deviation,
            "bound": self.bound,
            "h_fj": self.h_fj,
            "fraction_plus_sampled": self.fraction_plus_sampled,
        }


def cube_samples(samples: int, seed: int = 0) -> np.ndarray:
    """Uniform points of the unit cube [0, 1]^3 from a seeded generator"""
    return np.random.default_rng(seed).random((samples, 3))


def convergence_study(
    L: LaminateSpec,
    j_list: Sequence[int],
    samples: int = 10_000,
    seed: int = 0,
) -> list[ConvergenceRow]:
    """Sup-norm distance of f_j from the linear map on the unit cube for each j"""
    j_list = [int(j) for j in j_list]
    if not j_list or any(j < 1 for j in j_list) or j_list != sorted(j_list):
        raise InvalidInputError(f"Frequencies must be ascending positive integers, got {j_list}")
    x = cube_samples(samples, seed)
    rows = []
    for j in j_list:
        Lj = L.with_frequency(j)
        deviation = np.linalg.norm(laminate_eval(Lj, x) - x @ L.A.T, axis=1)
        h_fj = float(np.max(distortion_batch(laminate_gradient(Lj, x))))
        fraction = float(np.mean(phase_of(Lj, x) == 1))
        rows.append(ConvergenceRow(j, float(deviation.max()), 1.0 / j, h_fj, fraction))
        logger.debug(f"j={j}: max deviation {deviation.max():.6g}, H(f_j)={h_fj:.12g}")
    return rows


def convergence_slope(rows: Sequence[ConvergenceRow]) -> float:
    """Log-log slope of the deviation against j"""
    if len(rows) < 2:
        raise InvalidInputError("At least two frequencies are needed for a slope")
    j = np.log([row.j for row in rows])
    dev = np.log([row.max_deviation for row in rows])
    return float(np.polyfit(j, dev, 1)[0])


def laminate_samples(L: LaminateSpec, samples: int = 1000, seed: int = 0) -> list[dict]:
    """Sampled (x, f_j(x), phase) rows on the unit cube"""
    x = cube_samples(samples, seed)
    fx = laminate_eval(L, x)
    phases = phase_of(L, x)
    return [
        {"x1": p[0], "x2": p[1], "x3": p[2], "f1": q[0], "f2": q[1], "f3": q[2], "phase": int(ph)}
        for p, q, ph in zip(x.tolist(), fx.tolist(), phases.tolist())
    ]


__all__ = [
    "sawtooth_eval",
    "sawtooth_slope",
    "optimal_laminate",
    "laminate_eval",
    "laminate_gradient",
    "phase_of",
    "slab_width",
    "slab_interior_points",
    "slab_distortion_check",
    "laminate_distortion",
    "lamination_angle",
    "lamination_angle_limit",
    "HadamardJump",
    "hadamard_jump",
    "regime_strong",
    "regime_weak",
    "ConvergenceRow",
    "cube_samples",
    "convergence_study",
    "convergence_slope",
    "laminate_samples",
]
