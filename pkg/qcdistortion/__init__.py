"""qc_distortion - Distortion jumps of quasiconformal laminates

This package computes the linear distortion of 3x3 matrices, the rank-one
direction along which it decreases fastest, and the two-phase laminates that
are strictly less distorted than the linear map they approximate.

Core Features:
    - Closed forms with independent oracles: every formula has a numeric twin
    - Deterministic output: fixed seeds, ordered sweeps, round-trip floats
    - Scriptable CLI with a stable exit-code contract

Core Components:
    - models: SingularForm, RankOneDir, CrossingInterval, LaminateSpec, ...
    - mat_core: closed-form and Jacobi eigen solvers, SVD normal form
    - distortion: H(A), sampled distortion of maps, energy gap
    - rank_one: directional derivatives, optimal direction, grid oracle
    - crossing: crossing interval, branch formulas, scan-and-bisect oracle
    - laminate: sawtooth laminates, distortion jump, convergence
    - sweep: jump sweeps over (alpha, beta) grids
    - verify: acceptance suite
    - parser / validator: matrix and run-file input
    - export: CSV / JSON output
    - reporting: progress events and renderers
    - errors: Exception hierarchy
"""

# Core models
from .models import (
    CrossingInterval,
    DirectionalSeries,
    DistortionValue,
    EnergyFamily,
    EnergySpec,
    JumpReport,
    LaminateSpec,
    PencilBranches,
    RankOneDir,
    RunConfig,
    Sawtooth,
    SingularForm,
    SphericalParam,
    SymEigen3,
)

# Configuration
from .config import Tolerances, get_tolerances

# Matrix core
from .mat_core import gram_eigen, jacobi_eigen, svd3, sym_eigen3

# Distortion
from .distortion import energy_gap, linear_distortion, sampled_distortion, sphere_directions

# Rank-one directions
from .rank_one import directional_series, grid_oracle, optimal_direction, transport_direction

# Crossings
from .crossing import (
    branch_eigenvalues,
    concavity_certificate,
    crossing_interval,
    pencil_charpoly,
    scan_crossings,
    t_of_lambda,
)

# Laminates and sweeps
from .laminate import convergence_study, lamination_angle, laminate_distortion, optimal_laminate, sawtooth_eval
from .sweep import extend_until, jump_sweep

# Input
from .parser import load_matrix_file, load_run_file
from .validator import validate, validate_run_config

# Errors
from .errors import (
    CertificateError,
    CrossingError,
    DegenerateSpectrumError,
    DistortionError,
    InvalidInputError,
    NonsmoothPointError,
    OutputError,
    ParseError,
    PoleError,
    RankDeficientError,
    ValidationError,
)

__version__ = "0.1.0"

__all__ = [
    # Models
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
    "RunConfig",
    # Configuration
    "Tolerances",
    "get_tolerances",
    # Matrix core
    "sym_eigen3",
    "jacobi_eigen",
    "gram_eigen",
    "svd3",
    # Distortion
    "linear_distortion",
    "sphere_directions",
    "sampled_distortion",
    "energy_gap",
    # Rank-one directions
    "directional_series",
    "optimal_direction",
    "transport_direction",
    "grid_oracle",
    # Crossings
    "crossing_interval",
    "branch_eigenvalues",
    "pencil_charpoly",
    "t_of_lambda",
    "scan_crossings",
    "concavity_certificate",
    # Laminates and sweeps
    "sawtooth_eval",
    "optimal_laminate",
    "laminate_distortion",
    "lamination_angle",
    "convergence_study",
    "jump_sweep",
    "extend_until",
    # Input
    "load_matrix_file",
    "load_run_file",
    "validate",
    "validate_run_config",
    # Errors
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
