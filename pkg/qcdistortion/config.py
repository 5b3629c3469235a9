"""Tolerance profiles and environment overrides

All numerical thresholds used across the package live in a single
``Tolerances`` value. A profile is chosen by name, by the
``QCD_TOLERANCE_PROFILE`` environment variable, or falls back to ``default``.
"""

import logging
import os
from dataclasses import dataclass, replace

from .errors import InvalidInputError

logger = logging.getLogger(__name__)

PROFILE_ENV = "QCD_TOLERANCE_PROFILE"
THREADS_ENV = "QCD_THREADS"


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by every module

    Attributes:
        rel: Default relative tolerance for comparisons
        abs_floor: Absolute floor added to relative comparisons
        degenerate: Relative gap below which a spectrum counts as degenerate
        orthonormal: Allowed deviation of Q^T Q from the identity
        fd_agreement: Required agreement between perturbation and FD derivatives
        crossing_gap: Relative gap at which two branches count as coincident
        pole: Denominator magnitude treated as a pole of t(lambda)
        kink_factor: Second-difference spike (vs. median) that marks a kink
        sphere_directions: Directions used by the sphere sampler
        fd_steps: Step sizes for the first central difference (Richardson pair)
        fd_steps_second: Step sizes for the second central difference
        bisect_xtol: Absolute tolerance of the crossing bisection
    """

    rel: float = 1e-9
    abs_floor: float = 1e-12
    degenerate: float = 1e-12
    orthonormal: float = 1e-12
    fd_agreement: float = 1e-6
    crossing_gap: float = 1e-7
    pole: float = 1e-12
    kink_factor: float = 1e3
    sphere_directions: int = 4096
    fd_steps: tuple[float, float] = (1e-4, 1e-5)
    fd_steps_second: tuple[float, float] = (1e-3, 5e-4)
    bisect_xtol: float = 1e-10

    def close(self, a: float, b: float, rel: float | None = None) -> bool:
        """Relative comparison with the absolute floor"""
        rel = self.rel if rel is None else rel
        return abs(a - b) <= rel * max(abs(a), abs(b)) + self.abs_floor


PROFILES: dict[str, Tolerances] = {
    "default": Tolerances(),
    "strict": Tolerances(rel=1e-11, fd_agreement=1e-7, crossing_gap=1e-9, sphere_directions=8192),
    "loose": Tolerances(rel=1e-7, fd_agreement=1e-5, crossing_gap=1e-6, sphere_directions=1024),
}


def profile_name(profile: str | None = None) -> str:
    """Name of the active profile: explicit, from the environment, or 'default'"""
    return profile or os.environ.get(PROFILE_ENV) or "default"


def get_tolerances(profile: str | None = None) -> Tolerances:
    """Resolve a tolerance profile

    Args:
        profile: Profile name; when None the environment variable is consulted

    Returns:
        The selected Tolerances

    Raises:
        InvalidInputError: If the profile name is unknown
    """
    name = profile_name(profile)
    if name not in PROFILES:
        raise InvalidInputError(
            f"Unknown tolerance profile '{name}'. Available profiles: {', '.join(sorted(PROFILES))}"
        )
    return PROFILES[name]


def with_overrides(tol: Tolerances, **changes) -> Tolerances:
    """Return a copy of ``tol`` with selected fields replaced"""
    return replace(tol, **changes)


def get_thread_count(default: int = 1) -> int:
    """Worker count for sweeps and the grid oracle (``QCD_THREADS``)"""
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return default
    try:
        count = int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {THREADS_ENV}={raw!r}")
        return default
    return max(1, count)


__all__ = [
    "Tolerances",
    "PROFILES",
    "profile_name",
    "get_tolerances",
    "with_overrides",
    "get_thread_count",
]
