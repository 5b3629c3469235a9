"""Validation of run configurations

Every check returns a list of messages; an empty list means valid.
"""

import math
from typing import Optional

from .config import PROFILE_ENV, PROFILES, profile_name
from .errors import ValidationError
from .models import Command, EnergyFamily, EnergySpec, RunConfig
from .verify import CHECKS

MAX_GRID_VALUE = 1e8
MAX_SAMPLES = 10_000_000
CHECK_NAMES = [name for name, _ in CHECKS]


def _finite(values) -> bool:
    return all(isinstance(v, (int, float)) and math.isfinite(v) for v in values)


def _validate_matrix_input(config: RunConfig) -> list[str]:
    errors = []
    modes = [mode for mode in ("matrix", "sing") if getattr(config, mode) is not None]
    if len(modes) != 1:
        errors.append(f"Command '{config.command.value}' needs exactly one matrix input (matrix or --sing), got {len(modes)}")
        return errors

    if config.matrix is not None:
        if len(config.matrix) != 9:
            errors.append(f"Matrix needs 9 row-major entries, got {len(config.matrix)}")
        elif not _finite(config.matrix):
            errors.append("Matrix entries must be finite")

    if config.sing is not None:
        alpha, beta = config.sing
        if not _finite([alpha, beta]):
            errors.append("Sing parameters must be finite")
        elif not 1.0 <= alpha <= beta:
            errors.append(f"Sing parameters must satisfy 1 <= alpha <= beta, got ({alpha:g}, {beta:g})")
    return errors


def _validate_grid(name: str, values: list[float]) -> list[str]:
    errors = []
    if not values:
        errors.append(f"Grid '{name}' must be nonempty")
        return errors
    if not _finite(values):
        errors.append(f"Grid '{name}' has non-finite values")
        return errors
    out_of_range = [v for v in values if not 1.0 < v <= MAX_GRID_VALUE]
    if out_of_range:
        errors.append(f"Grid '{name}' values must lie in (1, {MAX_GRID_VALUE:g}], got {out_of_range}")
    return errors


def validate_energy(spec: EnergySpec) -> list[str]:
    """Check an energy spec names a convex increasing function"""
    errors = []
    if spec.family is EnergyFamily.POWER and not (math.isfinite(spec.p) and spec.p >= 1.0):
        errors.append(f"Power energy needs a finite p >= 1, got {spec.p}")
    return errors


def validate_run_config(config: RunConfig) -> list[str]:
    """Validate a run configuration

    Args:
        config: RunConfig from argparse or a run file

    Returns:
        List of validation error messages. Empty list means valid.
    """
    errors = []

    if config.command in (Command.ANALYZE, Command.LAMINATE):
        errors.extend(_validate_matrix_input(config))
    elif config.matrix is not None or config.sing is not None:
        errors.append(f"Command '{config.command.value}' takes no matrix input")

    if config.command is Command.SWEEP:
        errors.extend(_validate_grid("alphas", config.alphas or []))
        errors.extend(_validate_grid("betas", config.betas or []))
    elif config.command is Command.VERIFY:
        for name in ("alphas", "betas"):
            if getattr(config, name) is not None:
                errors.extend(_validate_grid(name, getattr(config, name)))

    if not 1 <= config.samples <= MAX_SAMPLES:
        errors.append(f"Sample count must lie in [1, {MAX_SAMPLES}], got {config.samples}")
    if config.j < 1:
        errors.append(f"Laminate frequency j must be >= 1, got {config.j}")
    if config.workers < 1:
        errors.append(f"Worker count must be >= 1, got {config.workers}")
    if config.seed < 0:
        errors.append(f"Seed must be non-negative, got {config.seed}")
    profile = profile_name(config.tolerance_profile)
    if profile not in PROFILES:
        source = "" if config.tolerance_profile else f" (from {PROFILE_ENV})"
        errors.append(f"Unknown tolerance profile '{profile}'{source}. Available: {', '.join(sorted(PROFILES))}")
    if config.inject_fault and config.command is not Command.VERIFY:
        errors.append("--inject-fault is only available for 'verify'")
    if config.checks is not None:
        if config.command is not Command.VERIFY:
            errors.append("--only is only available for 'verify'")
        unknown = [name for name in config.checks if name not in CHECK_NAMES]
        if unknown:
            errors.append(f"Unknown checks {unknown}. Available: {', '.join(CHECK_NAMES)}")

    errors.extend(validate_energy(config.energy))
    return errors


def validate(config: RunConfig, context: Optional[str] = None) -> RunConfig:
    """Raise ValidationError if ``config`` is invalid, else return it"""
    errors = validate_run_config(config)
    if errors:
        where = f" in {context}" if context else ""
        raise ValidationError(f"Invalid run configuration{where}: {'; '.join(errors)}", errors)
    return config


__all__ = [
    "validate_energy",
    "validate_run_config",
    "validate",
]
