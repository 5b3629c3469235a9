"""Distortion-related exceptions

This module defines all exceptions raised by the qc_distortion library.
Each class carries the CLI exit code it maps to (2 usage, 3 math-domain,
4 I/O).
"""


class DistortionError(Exception):
    """Base exception for all qc_distortion errors"""

    exit_code = 3


class InvalidInputError(DistortionError):
    """Raised when inputs are non-finite, mis-shaped or out of range"""

    exit_code = 2


class ParseError(DistortionError):
    """Raised when a matrix, JSON file or YAML run file cannot be parsed"""

    exit_code = 2


class ValidationError(DistortionError):
    """Raised when a run configuration or energy spec is invalid

    Attributes:
        errors: List of validation error messages (may contain just one)
    """

    exit_code = 2

    def __init__(self, message: str, errors: list[str] | None = None):
        super().__init__(message)
        self.errors = errors if errors is not None else [message]


class RankDeficientError(DistortionError):
    """Raised when an invertible matrix is required but det(A) = 0"""


class DegenerateSpectrumError(DistortionError):
    """Raised when three distinct singular values are required but not present"""


class NonsmoothPointError(DistortionError):
    """Raised when an extreme Gram eigenvalue is repeated, so H is not differentiable"""


class PoleError(DistortionError):
    """Raised when t(lambda) is evaluated at a pole of its denominator"""


class CrossingError(DistortionError):
    """Raised when the crossing interval fails a consistency check"""


class CertificateError(DistortionError):
    """Raised when the concavity certificate fails

    Attributes:
        t: Pencil parameter at which the failing assertion was observed
    """

    def __init__(self, message: str, t: float | None = None):
        super().__init__(message)
        self.t = t


class OutputError(DistortionError):
    """Raised when an output file cannot be written"""

    exit_code = 4


__all__ = [
    "DistortionError",
    "InvalidInputError",
    "ParseError",
    "ValidationError",
    "RankDeficientError",
    "DegenerateSpectrumError",
    "NonsmoothPointError",
    "PoleError",
    "CrossingError",
    "CertificateError",
    "OutputError",
]
