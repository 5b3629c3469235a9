"""Parsing of matrices and YAML run files

Matrices come as nine row-major numbers, as a JSON file holding a nested
3x3 list (optionally under a "matrix" key), or as the ``--sing`` shortcut.
Run files are YAML documents validated against a strict schema.
"""

import json
import math
from pathlib import Path
from typing import Iterable

import numpy as np
import strictyaml
from strictyaml import Bool, Enum, Float, Int, Map, Seq, Str
from strictyaml import Optional as Opt

from .errors import ParseError
from .models import Command, EnergyFamily, EnergySpec, OutputFormat, RunConfig

RUN_SCHEMA = Map(
    {
        "command": Enum([c.value for c in Command]),
        Opt("matrix"): Seq(Float()),
        Opt("sing"): Seq(Float()),
        Opt("alphas"): Seq(Float()),
        Opt("betas"): Seq(Float()),
        Opt("format"): Enum([f.value for f in OutputFormat]),
        Opt("output"): Str(),
        Opt("samples"): Int(),
        Opt("seed"): Int(),
        Opt("j"): Int(),
        Opt("energy"): Map({"family": Enum([f.value for f in EnergyFamily]), Opt("p"): Float()}),
        Opt("workers"): Int(),
        Opt("tolerance_profile"): Str(),
        Opt("geometry"): Bool(),
        Opt("checks"): Seq(Str()),
    }
)


def parse_matrix_values(values: Iterable) -> np.ndarray:
    """Nine row-major entries to a 3x3 array

    Raises:
        ParseError: If there are not exactly nine finite numbers
    """
    values = list(values)
    if len(values) != 9:
        raise ParseError(f"A matrix needs 9 row-major entries, got {len(values)}")
    try:
        entries = [float(v) for v in values]
    except (TypeError, ValueError) as e:
        raise ParseError(f"Matrix entries must be numbers: {e}")
    if not all(math.isfinite(v) for v in entries):
        raise ParseError("Matrix entries must be finite")
    return np.array(entries).reshape(3, 3)


def load_matrix_file(path: str | Path) -> np.ndarray:
    """Read a 3x3 matrix from JSON

    Accepts ``[[...], [...], [...]]``, a flat list of nine numbers, or either
    of those under a "matrix" key.

    Raises:
        ParseError: If the file is missing or malformed
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise ParseError(f"Cannot read matrix file {path}: {e}")
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {path}: {e}")

    if isinstance(data, dict):
        if "matrix" not in data:
            raise ParseError(f"Matrix file {path} has no 'matrix' key")
        data = data["matrix"]
    if isinstance(data, list) and len(data) == 3 and all(isinstance(row, list) for row in data):
        if any(len(row) != 3 for row in data):
            raise ParseError(f"Matrix in {path} must be 3x3")
        data = [v for row in data for v in row]
    if not isinstance(data, list):
        raise ParseError(f"Matrix in {path} must be a list")
    return parse_matrix_values(data)


def parse_run_text(text: str) -> dict:
    """Validate YAML run-file text against the schema

    Raises:
        ParseError: If the YAML is invalid or does not match the schema
    """
    try:
        parsed = strictyaml.load(text, RUN_SCHEMA)
    except strictyaml.YAMLError as e:
        raise ParseError(f"Invalid run file: {e}")
    return parsed.data


def run_config_from_mapping(data: dict) -> RunConfig:
    """Build a RunConfig from a schema-validated mapping"""
    energy = EnergySpec()
    if "energy" in data:
        energy = EnergySpec(family=EnergyFamily(data["energy"]["family"]), p=float(data["energy"].get("p", 1.0)))

    config = RunConfig(command=Command(data["command"]), energy=energy)
    if "matrix" in data:
        config.matrix = [float(v) for v in data["matrix"]]
    if "sing" in data:
        sing = [float(v) for v in data["sing"]]
        if len(sing) != 2:
            raise ParseError(f"'sing' needs two values (alpha, beta), got {len(sing)}")
        config.sing = (sing[0], sing[1])
    for key in ("alphas", "betas"):
        if key in data:
            setattr(config, key, [float(v) for v in data[key]])
    if "format" in data:
        config.output_format = OutputFormat(data["format"])
    config.output_path = data.get("output")
    for key in ("samples", "seed", "j", "workers"):
        if key in data:
            setattr(config, key, int(data[key]))
    config.tolerance_profile = data.get("tolerance_profile", config.tolerance_profile)
    config.geometry = bool(data.get("geometry", False))
    if "checks" in data:
        config.checks = [str(name) for name in data["checks"]]
    return config


def load_run_file(path: str | Path) -> RunConfig:
    """Load a RunConfig from a YAML run file

    Example:
        command: analyze
        sing:
          - 2.0
          - 4.0
        format: json

    Raises:
        ParseError: If the file cannot be read or parsed
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"Cannot read run file {path}: {e}")
    return run_config_from_mapping(parse_run_text(text))


__all__ = [
    "RUN_SCHEMA",
    "parse_matrix_values",
    "load_matrix_file",
    "parse_run_text",
    "run_config_from_mapping",
    "load_run_file",
]
