"""Small dense linear algebra for 3x3 matrices

Closed-form and iterative symmetric eigensolvers that cross-check each other,
the SVD normal form ``A = scale * Q * diag(1, alpha, beta) * R`` and a few
helpers (determinant, orthogonality checks, random rotations).
"""

import itertools
import logging
import math
from typing import Optional

import numpy as np

from .config import Tolerances, get_tolerances
from .errors import DegenerateSpectrumError, InvalidInputError, RankDeficientError
from .models import SingularForm, SymEigen3

logger = logging.getLogger(__name__)

JACOBI_MAX_SWEEPS = 50


def as_mat3(A, name: str = "A") -> np.ndarray:
    """Coerce to a finite 3x3 float array

    Raises:
        InvalidInputError: If the shape is wrong or an entry is not finite
    """
    try:
        arr = np.array(A, dtype=float)
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"{name} is not a numeric matrix: {e}")
    if arr.shape == (9,):
        arr = arr.reshape(3, 3)
    if arr.shape != (3, 3):
        raise InvalidInputError(f"{name} must be 3x3, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return arr


def det3(A) -> float:
    """Determinant as the triple product of the rows"""
    A = as_mat3(A)
    return float(np.dot(A[0], np.cross(A[1], A[2])))


def matmul(A, B) -> np.ndarray:
    return as_mat3(A) @ as_mat3(B, "B")


def transpose(A) -> np.ndarray:
    return as_mat3(A).T.copy()


def frobenius_norm(A) -> float:
    return float(np.sqrt(np.sum(as_mat3(A) ** 2)))


def _check_symmetric(S: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    S = as_mat3(S, "S")
    scale = max(1.0, float(np.max(np.abs(S))))
    if np.max(np.abs(S - S.T)) > tol * scale:
        raise InvalidInputError("Matrix is not symmetric")
    return 0.5 * (S + S.T)


def sym_eigvals_closed_form(S) -> np.ndarray:
    """Eigenvalues of a symmetric 3x3 matrix by the trigonometric formula

    Returns:
        Ascending eigenvalues
    """
    S = _check_symmetric(S)
    p1 = S[0, 1] ** 2 + S[0, 2] ** 2 + S[1, 2] ** 2
    q = np.trace(S) / 3.0
    if p1 == 0.0:
        return np.sort(np.diag(S))

    p2 = (S[0, 0] - q) ** 2 + (S[1, 1] - q) ** 2 + (S[2, 2] - q) ** 2 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    Bm = (S - q * np.eye(3)) / p
    r = np.clip(np.linalg.det(Bm) / 2.0, -1.0, 1.0)
    phi = math.acos(r) / 3.0

    lam_max = q + 2.0 * p * math.cos(phi)
    lam_min = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    lam_mid = 3.0 * q - lam_max - lam_min
    return np.sort(np.array([lam_min, lam_mid, lam_max]))


def _eigvec_cross(S: np.ndarray, lam: float) -> Optional[np.ndarray]:
    """Null vector of S - lam I from the largest cross product of its rows"""
    M = S - lam * np.eye(3)
    candidates = [np.cross(M[0], M[1]), np.cross(M[0], M[2]), np.cross(M[1], M[2])]
    best = max(candidates, key=lambda c: float(np.dot(c, c)))
    norm = float(np.linalg.norm(best))
    if norm == 0.0:
        return None
    return best / norm


def jacobi_eigen(S, max_sweeps: int = JACOBI_MAX_SWEEPS) -> SymEigen3:
    """Cyclic Jacobi rotations for a symmetric 3x3 matrix

    Args:
        S: Symmetric matrix
        max_sweeps: Upper bound on full sweeps over the off-diagonal pairs

    Returns:
        SymEigen3 with ascending eigenvalues
    """
    S = _check_symmetric(S).copy()
    V = np.eye(3)
    scale = max(float(np.sqrt(np.sum(S**2))), np.finfo(float).tiny)

    for sweep in range(max_sweeps):
        off = math.sqrt(S[0, 1] ** 2 + S[0, 2] ** 2 + S[1, 2] ** 2)
        if off <= 1e-17 * scale:
            break
        for p, q in ((0, 1), (0, 2), (1, 2)):
            if S[p, q] == 0.0:
                continue
            theta = (S[q, q] - S[p, p]) / (2.0 * S[p, q])
            t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
            if theta < 0:
                t = -t
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            J = np.eye(3)
            J[p, p] = c
            J[q, q] = c
            J[p, q] = s
            J[q, p] = -s
            S = J.T @ S @ J
            V = V @ J
    else:
        logger.warning(f"Jacobi iteration stopped after {max_sweeps} sweeps")

    values = np.diag(S)
    order = np.argsort(values)
    values = values[order]
    V = V[:, order]
    return SymEigen3(float(values[0]), float(values[1]), float(values[2]), V, method="jacobi")


def _align_to_previous(values: np.ndarray, vectors: np.ndarray, previous: np.ndarray, tol: float):
    """Order near-tied eigenpairs by overlap with ``previous`` and fix signs"""
    scale = max(1.0, float(np.max(np.abs(values))))
    groups = [[0]]
    for i in (1, 2):
        if values[i] - values[i - 1] <= tol * scale:
            groups[-1].append(i)
        else:
            groups.append([i])

    vectors = vectors.copy()
    for group in groups:
        if len(group) < 2:
            continue
        best = max(
            itertools.permutations(group),
            key=lambda perm: sum(abs(float(np.dot(previous[:, g], vectors[:, p]))) for g, p in zip(group, perm)),
        )
        vectors[:, group] = vectors[:, list(best)]

    for i in range(3):
        if np.dot(previous[:, i], vectors[:, i]) < 0:
            vectors[:, i] = -vectors[:, i]
    return vectors


def sym_eigen3(S, previous: Optional[np.ndarray] = None, tol: Optional[Tolerances] = None) -> SymEigen3:
    """Eigen-decomposition of a symmetric 3x3 matrix

    Uses the trigonometric closed form with cross-product eigenvectors and
    falls back to Jacobi rotations when the spectrum is near-degenerate or
    the closed-form vectors fail the orthonormality check.

    Args:
        S: Symmetric matrix
        previous: Optional basis (columns) from a nearby parameter; ties are
            broken and signs chosen to follow it
        tol: Tolerance profile

    Returns:
        SymEigen3 with ascending eigenvalues
    """
    tol = tol or get_tolerances()
    S = _check_symmetric(S)
    values = sym_eigvals_closed_form(S)
    scale = max(1.0, float(np.max(np.abs(values))))
    gaps = np.diff(values)

    result = None
    if np.min(gaps) > 1e-6 * scale:
        vectors = [_eigvec_cross(S, lam) for lam in values]
        if all(v is not None for v in vectors):
            V = np.column_stack(vectors)
            residual = np.max(np.abs(S @ V - V * values))
            if orthonormality_error(V) <= 1e-10 and residual <= 1e-10 * scale:
                result = SymEigen3(float(values[0]), float(values[1]), float(values[2]), V)

    if result is None:
        logger.debug(f"Near-degenerate spectrum {values.tolist()}, using Jacobi rotations")
        result = jacobi_eigen(S)

    if previous is not None:
        previous = np.asarray(previous, dtype=float)
        V = _align_to_previous(result.values, result.vectors, previous, 1e-6)
        result = SymEigen3(result.lam1, result.lam2, result.lam3, V, method=result.method)
    return result


def gram_eigen(A, tol: Optional[Tolerances] = None) -> SymEigen3:
    """Eigen-decomposition of A^T A

    Raises:
        InvalidInputError: If A is not a finite 3x3 matrix
    """
    A = as_mat3(A)
    eig = sym_eigen3(A.T @ A, tol=tol)
    values = np.maximum(eig.values, 0.0)
    return SymEigen3(float(values[0]), float(values[1]), float(values[2]), eig.vectors, method=eig.method)


def singular_values(A) -> np.ndarray:
    """Ascending singular values via LAPACK"""
    A = as_mat3(A)
    return np.linalg.svd(A, compute_uv=False)[::-1].copy()


def svd3(A, tol: Optional[Tolerances] = None) -> SingularForm:
    """Normal form A = scale * Q * diag(1, alpha, beta) * R

    Args:
        A: Invertible 3x3 matrix
        tol: Tolerance profile

    Returns:
        SingularForm with ascending normalized singular values

    Raises:
        RankDeficientError: If A is singular
    """
    tol = tol or get_tolerances()
    A = as_mat3(A)
    U, s, Vt = np.linalg.svd(A)
    if s[-1] <= np.finfo(float).eps * s[0] or s[-1] == 0.0:
        raise RankDeficientError(f"Matrix is singular (singular values {s[::-1].tolist()})")

    order = [2, 1, 0]
    Q = U[:, order]
    R = Vt[order, :]
    scale = float(s[2])
    form = SingularForm(scale=scale, alpha=float(s[1] / scale), beta=float(s[0] / scale), Q=Q, R=R)
    logger.debug(f"svd3: scale={scale}, alpha={form.alpha}, beta={form.beta}")
    return form


def require_distinct(F: SingularForm, tol: Optional[Tolerances] = None) -> None:
    """Require 1 < alpha < beta strictly

    Raises:
        DegenerateSpectrumError: If two singular values coincide
    """
    tol = tol or get_tolerances()
    if F.alpha - 1.0 <= tol.rel * F.alpha or F.beta - F.alpha <= tol.rel * F.beta:
        raise DegenerateSpectrumError(
            f"Three distinct singular values required, got (1, {F.alpha}, {F.beta})"
        )


def orthonormality_error(Q) -> float:
    """max |Q^T Q - I|"""
    Q = as_mat3(Q, "Q")
    return float(np.max(np.abs(Q.T @ Q - np.eye(3))))


def random_orthogonal(rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix from a QR factorization"""
    Z = rng.standard_normal((3, 3))
    Q, Rr = np.linalg.qr(Z)
    return Q * np.sign(np.diag(Rr))


__all__ = [
    "as_mat3",
    "det3",
    "matmul",
    "transpose",
    "frobenius_norm",
    "sym_eigvals_closed_form",
    "jacobi_eigen",
    "sym_eigen3",
    "gram_eigen",
    "singular_values",
    "svd3",
    "require_distinct",
    "orthonormality_error",
    "random_orthogonal",
]
