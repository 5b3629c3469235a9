"""CSV and JSON writers for reports and figure data

Floats are written in their shortest round-trip form (at most 17 significant
digits) so reruns produce byte-identical files.
"""

import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Iterable, Optional, TextIO

import numpy as np

from .errors import OutputError

logger = logging.getLogger(__name__)

SWEEP_HEADER = ["alpha", "beta", "t_minus", "t_plus", "h_A", "h_laminate", "ratio", "angle_rad", "fraction_plus"]
BRANCH_HEADER = ["t", "lam_min", "lam_mid", "lam_max", "H"]
LANDSCAPE_HEADER = ["theta1", "theta2", "Q"]
GEOMETRY_HEADER = ["x1", "x2", "x3", "f1", "f2", "f3", "phase"]


def format_number(value: Any) -> str:
    """Shortest round-trip text for floats; ints and strings unchanged"""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars and arrays (recursively) to JSON-ready values"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def dumps_report(report: dict) -> str:
    """Deterministic JSON text of a report"""
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True)


def write_csv_stream(stream: TextIO, header: list[str], rows: Iterable[dict]) -> int:
    writer = csv.DictWriter(stream, fieldnames=header, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    count = 0
    for row in rows:
        writer.writerow({key: format_number(row.get(key)) for key in header})
        count += 1
    return count


def csv_text(header: list[str], rows: Iterable[dict]) -> str:
    buffer = io.StringIO()
    write_csv_stream(buffer, header, rows)
    return buffer.getvalue()


def write_csv(path: str | Path, header: list[str], rows: Iterable[dict]) -> Path:
    """Write rows to a CSV file

    Raises:
        OutputError: If the file cannot be written
    """
    path = Path(path)
    try:
        with open(path, "w", newline="", encoding="utf-8") as stream:
            count = write_csv_stream(stream, header, rows)
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e}")
    logger.info(f"Wrote {count} rows to {path}")
    return path


def write_json(path: Optional[str | Path], report: dict) -> str:
    """Write a JSON report to ``path`` (or only return the text when path is None)"""
    text = dumps_report(report)
    if path is not None:
        try:
            Path(path).write_text(text + "\n", encoding="utf-8")
        except OSError as e:
            raise OutputError(f"Cannot write {path}: {e}")
        logger.info(f"Wrote report to {path}")
    return text


__all__ = [
    "SWEEP_HEADER",
    "BRANCH_HEADER",
    "LANDSCAPE_HEADER",
    "GEOMETRY_HEADER",
    "format_number",
    "to_jsonable",
    "dumps_report",
    "write_csv_stream",
    "csv_text",
    "write_csv",
    "write_json",
]
