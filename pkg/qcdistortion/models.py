"""Data models for qc_distortion

This module provides the value types shared across the package: spectral
data of a deformation gradient, rank-one directions, pencil branches,
crossing intervals and laminates. All of them are plain dataclasses holding
numpy arrays; none of them is mutated after construction.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .errors import InvalidInputError

# A 3x3 float array; shape and finiteness are checked at API boundaries
Mat3 = np.ndarray


@dataclass(frozen=True, eq=False)
class SymEigen3:
    """Eigen-decomposition of a symmetric 3x3 matrix (usually A^T A)

    Attributes:
        lam1, lam2, lam3: Eigenvalues in ascending order
        vectors: 3x3 array whose columns are the matching orthonormal eigenvectors
        method: Solver that produced the decomposition ("closed-form" or "jacobi")
    """

    lam1: float
    lam2: float
    lam3: float
    vectors: np.ndarray
    method: str = "closed-form"

    @property
    def values(self) -> np.ndarray:
        return np.array([self.lam1, self.lam2, self.lam3])

    def to_dict(self) -> dict:
        return {
            "values": [self.lam1, self.lam2, self.lam3],
            "vectors": self.vectors.tolist(),
            "method": self.method,
        }


@dataclass(frozen=True, eq=False)
class SingularForm:
    """Normal form A = scale * Q * diag(1, alpha, beta) * R

    Attributes:
        scale: Smallest singular value of A
        alpha: sigma_2 / sigma_1
        beta: sigma_3 / sigma_1
        Q: Left orthogonal factor
        R: Right orthogonal factor
    """

    scale: float
    alpha: float
    beta: float
    Q: np.ndarray = field(default_factory=lambda: np.eye(3))
    R: np.ndarray = field(default_factory=lambda: np.eye(3))

    @classmethod
    def sing(cls, alpha: float, beta: float) -> "SingularForm":
        """Build the canonical diagonal form Sing(1, alpha, beta)"""
        if not (math.isfinite(alpha) and math.isfinite(beta)):
            raise InvalidInputError(f"Sing parameters must be finite, got ({alpha}, {beta})")
        if not 1.0 <= alpha <= beta:
            raise InvalidInputError(f"Sing parameters must satisfy 1 <= alpha <= beta, got ({alpha}, {beta})")
        return cls(scale=1.0, alpha=float(alpha), beta=float(beta))

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag([1.0, self.alpha, self.beta])

    @property
    def singular_values(self) -> np.ndarray:
        return self.scale * np.array([1.0, self.alpha, self.beta])

    def matrix(self) -> np.ndarray:
        """Reassemble scale * Q * diag(1, alpha, beta) * R"""
        return self.scale * self.Q @ self.diagonal @ self.R

    def to_dict(self) -> dict:
        return {
            "scale": self.scale,
            "alpha": self.alpha,
            "beta": self.beta,
            "Q": self.Q.tolist(),
            "R": self.R.tolist(),
        }


@dataclass(frozen=True)
class DistortionValue:
    """Linear distortion H(A) = sigma_max / sigma_min (always >= 1)"""

    h: float

    def __float__(self) -> float:
        return self.h

    def is_conformal(self, tol: float = 1e-9) -> bool:
        return self.h - 1.0 <= tol


class EnergyFamily(str, Enum):
    """Named convex increasing functions usable as Phi"""

    IDENTITY = "identity"
    POWER = "power"
    EXP = "exp"


@dataclass(frozen=True)
class EnergySpec:
    """A convex increasing Phi from a named family

    Attributes:
        family: identity, power (h^p with p >= 1) or exp
        p: Exponent of the power family (ignored otherwise)
    """

    family: EnergyFamily = EnergyFamily.IDENTITY
    p: float = 1.0

    def phi(self, h):
        """Evaluate Phi at a scalar or array of distortion values"""
        h = np.asarray(h, dtype=float)
        if self.family is EnergyFamily.IDENTITY:
            out = h
        elif self.family is EnergyFamily.POWER:
            out = np.power(h, self.p)
        else:
            out = np.exp(h)
        return float(out) if out.ndim == 0 else out

    @property
    def label(self) -> str:
        if self.family is EnergyFamily.POWER:
            return f"power(p={self.p:g})"
        return self.family.value

    def to_dict(self) -> dict:
        result = {"family": self.family.value}
        if self.family is EnergyFamily.POWER:
            result["p"] = self.p
        return result


@dataclass(frozen=True, eq=False)
class RankOneDir:
    """Unit vectors u (lamination normal) and v (displacement direction)

    The rank-one matrix is B = u (x) v acting as B x = (u . x) v, so as an
    array it is the outer product v u^T. With this convention the laminate
    f(x) = A x + a(u . x) v has gradient A + a' B.
    """

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        for name in ("u", "v"):
            vec = np.asarray(getattr(self, name), dtype=float)
            if vec.shape != (3,) or not np.all(np.isfinite(vec)):
                raise InvalidInputError(f"RankOneDir.{name} must be a finite 3-vector")
            object.__setattr__(self, name, vec)

    def matrix(self) -> np.ndarray:
        return np.outer(self.v, self.u)

    def negated(self) -> "RankOneDir":
        """(-u) (x) (-v): the same matrix, both vectors flipped"""
        return RankOneDir(-self.u, -self.v)

    def is_unit(self, tol: float = 1e-12) -> bool:
        return abs(np.linalg.norm(self.u) - 1.0) <= tol and abs(np.linalg.norm(self.v) - 1.0) <= tol

    def to_dict(self) -> dict:
        return {"u": self.u.tolist(), "v": self.v.tolist()}


@dataclass(frozen=True)
class DirectionalSeries:
    """Taylor data of t -> H(A + tB) at t = 0

    Attributes:
        h0: H(A)
        d1: First derivative from eigenvalue perturbation theory
        d2: Second derivative from eigenvalue perturbation theory
        fd_d1: Richardson-extrapolated central difference for d1
        fd_d2: Richardson-extrapolated central difference for d2
        well_conditioned: Whether both derivatives agree within tolerance
    """

    h0: float
    d1: float
    d2: float
    fd_d1: Optional[float] = None
    fd_d2: Optional[float] = None
    well_conditioned: bool = True

    def to_dict(self) -> dict:
        return {
            "h0": self.h0,
            "d1": self.d1,
            "d2": self.d2,
            "fd_d1": self.fd_d1,
            "fd_d2": self.fd_d2,
            "well_conditioned": self.well_conditioned,
        }


@dataclass(frozen=True)
class SphericalParam:
    """Spherical parameters of a pair of unit vectors

    u = (sqrt(1 - r^2), r cos(theta1), r sin(theta1)) and
    v = (sqrt(1 - s^2), s cos(theta2), s sin(theta2)).
    """

    r: float
    s: float
    theta1: float
    theta2: float

    def __post_init__(self):
        if not (0.0 <= self.r <= 1.0 and 0.0 <= self.s <= 1.0):
            raise InvalidInputError(f"Spherical radii must lie in [0, 1], got r={self.r}, s={self.s}")

    @property
    def u(self) -> np.ndarray:
        return np.array([math.sqrt(1.0 - self.r**2), self.r * math.cos(self.theta1), self.r * math.sin(self.theta1)])

    @property
    def v(self) -> np.ndarray:
        return np.array([math.sqrt(1.0 - self.s**2), self.s * math.cos(self.theta2), self.s * math.sin(self.theta2)])

    def direction(self) -> RankOneDir:
        return RankOneDir(self.u, self.v)

    @classmethod
    def from_direction(cls, d: RankOneDir) -> "SphericalParam":
        """Recover parameters of a direction whose first components are >= 0"""
        u, v = d.u, d.v
        if u[0] < 0 or v[0] < 0:
            raise InvalidInputError("Spherical parameters need non-negative first components")
        r = float(np.hypot(u[1], u[2]))
        s = float(np.hypot(v[1], v[2]))
        theta1 = float(np.arctan2(u[2], u[1]) % (2 * math.pi))
        theta2 = float(np.arctan2(v[2], v[1]) % (2 * math.pi))
        return cls(min(r, 1.0), min(s, 1.0), theta1, theta2)


@dataclass(frozen=True)
class PencilBranches:
    """Gram eigenvalues of (A + tB0)^T (A + tB0) labelled by branch

    lam_min, lam_mid, lam_max are the branches through 1, alpha^2, beta^2 at
    t = 0; away from t = 0 they need not be in sorted order.
    """

    t: float
    lam_min: float
    lam_mid: float
    lam_max: float

    @property
    def distortion(self) -> float:
        values = (self.lam_min, self.lam_mid, self.lam_max)
        return math.sqrt(max(values) / min(values))

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "lam_min": self.lam_min,
            "lam_mid": self.lam_mid,
            "lam_max": self.lam_max,
            "H": self.distortion,
        }


@dataclass(frozen=True)
class CrossingInterval:
    """Interval [t_minus, t_plus] bounded by the first branch crossings

    Attributes:
        t_minus: Negative crossing point (mid and max branches meet)
        t_plus: Positive crossing point (min and mid branches meet)
        h_minus: H(A + t_minus B0)
        h_plus: H(A + t_plus B0)
        gram_minus: Common Gram eigenvalue of the two branches meeting at t_minus
        gram_plus: Common Gram eigenvalue of the two branches meeting at t_plus
    """

    t_minus: float
    t_plus: float
    h_minus: float
    h_plus: float
    gram_minus: Optional[float] = None
    gram_plus: Optional[float] = None

    @property
    def fraction_plus(self) -> float:
        return abs(self.t_minus) / (self.t_plus + abs(self.t_minus))

    def to_dict(self) -> dict:
        return {
            "t_minus": self.t_minus,
            "t_plus": self.t_plus,
            "h_minus": self.h_minus,
            "h_plus": self.h_plus,
            "gram_minus": self.gram_minus,
            "gram_plus": self.gram_plus,
        }


@dataclass(frozen=True)
class Sawtooth:
    """Periodic piecewise-linear profile with slopes t_plus (rising) and t_minus (falling)"""

    t_minus: float
    t_plus: float

    def __post_init__(self):
        if not (self.t_minus < 0.0 < self.t_plus):
            raise InvalidInputError(f"Sawtooth needs t_minus < 0 < t_plus, got ({self.t_minus}, {self.t_plus})")

    @property
    def period(self) -> float:
        return 1.0 / self.t_plus - 1.0 / self.t_minus

    @property
    def fraction_plus(self) -> float:
        """Share of each period on which the slope is t_plus"""
        return abs(self.t_minus) / (self.t_plus + abs(self.t_minus))


@dataclass(frozen=True, eq=False)
class LaminateSpec:
    """The map f_j(x) = A x + (1/j) a(j u . x) v

    Attributes:
        A: Deformation gradient of the limit map
        B0: Rank-one direction (u normal, v displacement)
        t_minus, t_plus: Sawtooth slopes
        j: Oscillation frequency
    """

    A: np.ndarray
    B0: RankOneDir
    t_minus: float
    t_plus: float
    j: int = 1

    def __post_init__(self):
        if int(self.j) != self.j or self.j < 1:
            raise InvalidInputError(f"Laminate frequency j must be a positive integer, got {self.j}")

    @property
    def sawtooth(self) -> Sawtooth:
        return Sawtooth(self.t_minus, self.t_plus)

    @property
    def gradient_plus(self) -> np.ndarray:
        return self.A + self.t_plus * self.B0.matrix()

    @property
    def gradient_minus(self) -> np.ndarray:
        return self.A + self.t_minus * self.B0.matrix()

    def with_frequency(self, j: int) -> "LaminateSpec":
        return LaminateSpec(self.A, self.B0, self.t_minus, self.t_plus, j)


@dataclass(frozen=True)
class JumpReport:
    """Distortion of a laminate compared with its limit map

    Attributes:
        h_A: H(A)
        h_laminate: max(H(A + t_minus B0), H(A + t_plus B0))
        ratio: h_A / h_laminate
        fraction_plus: Volume fraction of the t_plus phase
        h_minus, h_plus: Distortion of each phase
    """

    h_A: float
    h_laminate: float
    ratio: float
    fraction_plus: float
    h_minus: float
    h_plus: float

    def to_dict(self) -> dict:
        return {
            "h_A": self.h_A,
            "h_laminate": self.h_laminate,
            "ratio": self.ratio,
            "fraction_plus": self.fraction_plus,
            "h_minus": self.h_minus,
            "h_plus": self.h_plus,
        }


class Command(str, Enum):
    ANALYZE = "analyze"
    SWEEP = "sweep"
    LAMINATE = "laminate"
    VERIFY = "verify"
    FIGURES = "figures"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


@dataclass
class RunConfig:
    """Everything a CLI invocation depends on

    Exactly one matrix input mode is used: ``matrix`` (row-major entries or a
    JSON file) or ``sing`` (alpha, beta). Output is a pure function of this value.
    """

    command: Command
    matrix: Optional[list[float]] = None
    sing: Optional[tuple[float, float]] = None
    alphas: Optional[list[float]] = None
    betas: Optional[list[float]] = None
    output_format: OutputFormat = OutputFormat.JSON
    output_path: Optional[str] = None
    samples: int = 10_000
    seed: int = 0
    j: int = 10
    energy: EnergySpec = field(default_factory=EnergySpec)
    workers: int = 1
    tolerance_profile: Optional[str] = None
    geometry: bool = False
    inject_fault: bool = False
    checks: Optional[list[str]] = None

    def to_dict(self) -> dict:
        result = {
            "command": self.command.value,
            "output_format": self.output_format.value,
            "samples": self.samples,
            "seed": self.seed,
            "j": self.j,
            "energy": self.energy.to_dict(),
            "workers": self.workers,
        }
        if self.tolerance_profile is not None:
            result["tolerance_profile"] = self.tolerance_profile
        if self.matrix is not None:
            result["matrix"] = list(self.matrix)
        if self.sing is not None:
            result["sing"] = list(self.sing)
        if self.alphas is not None:
            result["alphas"] = list(self.alphas)
        if self.betas is not None:
            result["betas"] = list(self.betas)
        if self.output_path is not None:
            result["output_path"] = self.output_path
        if self.checks is not None:
            result["checks"] = list(self.checks)
        return result


__all__ = [
    "Mat3",
    "SymEigen3",
    "SingularForm",
    "DistortionValue",
    "EnergyFamily",
    "EnergySpec",
    "RankOneDir",
    "DirectionalSeries",
    "SphericalParam",
    "PencilBranches",
    "CrossingInterval",
    "Sawtooth",
    "LaminateSpec",
    "JumpReport",
    "Command",
    "OutputFormat",
    "RunConfig",
]
