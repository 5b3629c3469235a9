"""The linear distortion functional and energies built on it

H(A) is the ratio of the largest to the smallest singular value of A. The
module also provides a sampling estimate of the pointwise distortion of a map
(used to check laminates) and the two-phase energy and energy gap.
"""

import logging
import math
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

from .config import Tolerances, get_tolerances
from .errors import InvalidInputError, RankDeficientError
from .mat_core import as_mat3, require_distinct, singular_values, svd3
from .models import DistortionValue, EnergyFamily, EnergySpec

logger = logging.getLogger(__name__)

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class BoundaryConstraint(str, Enum):
    """Boundary conditions under which linear maps fail to minimize energy

    Only the two epsilon-neighbourhood variants are witnessed by the laminate
    energy gap; the other two are recorded for reference.
    """

    FIXED = "fixed"
    FACES_TO_FACES = "faces-to-faces"
    FACES_NEAR_FACES = "faces-near-faces"
    BOUNDARY_NEAR = "boundary-near"

    @property
    def certified(self) -> bool:
        return self in (BoundaryConstraint.FACES_NEAR_FACES, BoundaryConstraint.BOUNDARY_NEAR)


def distortion_ratio(A) -> float:
    """H(A) as a float; see ``linear_distortion``"""
    sv = singular_values(A)
    if sv[0] <= np.finfo(float).eps * sv[-1]:
        raise RankDeficientError(f"Distortion undefined for singular matrix (singular values {sv.tolist()})")
    return max(1.0, float(sv[-1] / sv[0]))


def linear_distortion(A) -> DistortionValue:
    """H(A) = sqrt(lam3 / lam1) = sigma_max / sigma_min

    Computed from the singular values rather than the Gram eigenvalues, which
    keeps full relative accuracy for strongly anisotropic matrices.

    Args:
        A: Invertible 3x3 matrix

    Returns:
        DistortionValue with h >= 1

    Raises:
        InvalidInputError: If A is not a finite 3x3 matrix
        RankDeficientError: If A is singular

    Example:
        >>> linear_distortion(np.diag([1.0, 2.0, 4.0])).h
        4.0
    """
    return DistortionValue(distortion_ratio(A))


def distortion_batch(stack: np.ndarray) -> np.ndarray:
    """H for a stack of matrices of shape (N, 3, 3)"""
    sv = np.linalg.svd(np.asarray(stack, dtype=float), compute_uv=False)
    return sv[:, 0] / sv[:, -1]


def sphere_directions(n: int = 4096) -> np.ndarray:
    """Golden-spiral (Fibonacci) points on the unit sphere

    Args:
        n: Number of directions

    Returns:
        Array of shape (n, 3) of unit vectors
    """
    if n < 1:
        raise InvalidInputError(f"Number of sphere directions must be positive, got {n}")
    k = np.arange(n, dtype=float)
    z = 1.0 - (2.0 * k + 1.0) / n
    rho = np.sqrt(1.0 - z * z)
    phi = GOLDEN_ANGLE * k
    return np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])


def sampled_distortion(
    f: Callable[[np.ndarray], np.ndarray],
    x,
    radii: Sequence[float],
    n_directions: Optional[int] = None,
    tol: Optional[Tolerances] = None,
) -> float:
    """Estimate the pointwise distortion of ``f`` at ``x``

    For each radius r the ratio max |f(x+h) - f(x)| / min |f(x+h) - f(x)| over
    |h| = r is taken on a fixed sphere sample. The ratio at the smallest radius
    is returned.

    Args:
        f: Map accepting an (N, 3) array of points and returning (N, 3)
        x: Base point
        radii: Positive radii in descending order
        n_directions: Sphere sample size (defaults to the tolerance profile)
        tol: Tolerance profile

    Returns:
        Ratio at the smallest radius

    Raises:
        InvalidInputError: If radii are not positive and descending
        RankDeficientError: If the sampled image degenerates
    """
    tol = tol or get_tolerances()
    radii = [float(r) for r in radii]
    if not radii or any(r <= 0 for r in radii):
        raise InvalidInputError(f"Radii must be positive, got {radii}")
    if any(b >= a for a, b in zip(radii, radii[1:])):
        raise InvalidInputError(f"Radii must be strictly descending, got {radii}")

    x = np.asarray(x, dtype=float).reshape(1, 3)
    dirs = sphere_directions(n_directions or tol.sphere_directions)
    fx = np.asarray(f(x), dtype=float).reshape(1, 3)

    ratio = math.nan
    for r in radii:
        image = np.asarray(f(x + r * dirs), dtype=float) - fx
        lengths = np.linalg.norm(image, axis=1)
        lo, hi = float(lengths.min()), float(lengths.max())
        # a collapsed image lies in a plane even when no sampled direction hits the kernel
        spread = np.linalg.svd(image, compute_uv=False)
        if lo <= tol.abs_floor * max(hi, 1.0) or spread[-1] <= tol.rel * spread[0]:
            raise RankDeficientError(f"Degenerate image of the sphere of radius {r} at {x.ravel().tolist()}")
        ratio = hi / lo
        logger.debug(f"sampled_distortion r={r:g}: ratio={ratio:.12g}")
    return ratio


def energy_of_two_phase(h_plus: float, h_minus: float, fraction_plus: float, phi: EnergySpec) -> float:
    """Energy of a map whose distortion takes two values on the unit cube

    Args:
        h_plus: Distortion on the plus phase
        h_minus: Distortion on the minus phase
        fraction_plus: Volume fraction of the plus phase
        phi: Convex increasing energy

    Returns:
        fraction_plus * phi(h_plus) + (1 - fraction_plus) * phi(h_minus)
    """
    if not 0.0 <= fraction_plus <= 1.0:
        raise InvalidInputError(f"Volume fraction must lie in [0, 1], got {fraction_plus}")
    if h_plus < 1.0 - 1e-12 or h_minus < 1.0 - 1e-12:
        raise InvalidInputError(f"Distortion values must be >= 1, got ({h_plus}, {h_minus})")
    return fraction_plus * phi.phi(h_plus) + (1.0 - fraction_plus) * phi.phi(h_minus)


def check_convex_increasing(phi: EnergySpec, grid: Optional[np.ndarray] = None) -> bool:
    """Finite-difference check that phi is increasing and convex on [1, 10]"""
    if grid is None:
        grid = np.linspace(1.0, 10.0, 201)
    values = np.asarray(phi.phi(grid), dtype=float)
    first = np.diff(values)
    second = np.diff(values, 2)
    scale = np.maximum(np.abs(values[1:-1]), 1.0)
    return bool(np.all(first > 0) and np.all(second >= -1e-12 * scale))


def energy_gap(A, phi: EnergySpec, tol: Optional[Tolerances] = None) -> float:
    """Energy deficiency of the optimal laminate below the linear map

    delta = phi(H(A)) - [f * phi(h_plus) + (1 - f) * phi(h_minus)] where
    f = |t_minus| / (t_plus + |t_minus|) is the plus-phase volume fraction.

    Raises:
        DegenerateSpectrumError: If A has a repeated singular value
    """
    from .crossing import crossing_interval

    tol = tol or get_tolerances()
    F = svd3(as_mat3(A), tol=tol)
    require_distinct(F, tol)
    interval = crossing_interval(F, tol=tol)
    h_A = F.beta
    laminate_energy = energy_of_two_phase(interval.h_plus, interval.h_minus, interval.fraction_plus, phi)
    delta = phi.phi(h_A) - laminate_energy
    logger.info(f"Energy gap for Sing(1, {F.alpha:g}, {F.beta:g}) with phi={phi.label}: {delta:.12g}")
    return float(delta)


def energy_spec(family: str, p: float = 1.0) -> EnergySpec:
    """Build an EnergySpec by family name

    Raises:
        InvalidInputError: If the family is unknown or p < 1 for the power family
    """
    try:
        fam = EnergyFamily(family)
    except ValueError:
        names = ", ".join(f.value for f in EnergyFamily)
        raise InvalidInputError(f"Unknown energy family '{family}'. Available: {names}")
    if fam is EnergyFamily.POWER and not p >= 1.0:
        raise InvalidInputError(f"Power energy needs p >= 1, got {p}")
    return EnergySpec(family=fam, p=float(p))


__all__ = [
    "BoundaryConstraint",
    "distortion_ratio",
    "linear_distortion",
    "distortion_batch",
    "sphere_directions",
    "sampled_distortion",
    "energy_of_two_phase",
    "check_convex_increasing",
    "energy_gap",
    "energy_spec",
]
