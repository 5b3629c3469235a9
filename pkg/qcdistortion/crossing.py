"""Eigenvalue branches along the optimal pencil and their crossings

Along A + tB0 with A = diag(1, alpha, beta) the matrix factors as
J * S(t), J = diag(1, -1, 1), S(t) = diag(1, -alpha, beta) + t u0 u0^T
symmetric. The Gram eigenvalues are the squares of the signed eigenvalues of
S(t), which never cross; the Gram branches cross where two signed
eigenvalues have equal magnitude. The first such points on either side of
t = 0 bound the interval [t_minus, t_plus].
"""

import cmath
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .config import Tolerances, get_tolerances
from .distortion import distortion_batch
from .errors import CertificateError, CrossingError, InvalidInputError, PoleError
from .mat_core import require_distinct
from .models import CrossingInterval, PencilBranches, RankOneDir, SingularForm
from .rank_one import optimal_components, optimal_direction

logger = logging.getLogger(__name__)

CERTIFICATE_SAMPLES = 1000
SCAN_POINTS_PER_WINDOW = 10_000

# (P0, P1, P2) of the crossing relation P0 - t P1 - t^2 P2 = 0
QuadraticCoefficients = tuple[float, float, float]


def crossing_quadratic(alpha: float, beta: float) -> QuadraticCoefficients:
    """Coefficients (P0, P1, P2) of 0 = P0 - t P1 - t^2 P2"""
    a, b = alpha, beta
    P0 = 2.0 * (
        a**4 * b**2 + 2 * a**4 * b + a**4
        - 2 * a**2 * b**3 - 4 * a**2 * b**2 - 2 * a**2 * b
        - a * b**5 - a * b**4 + 2 * a * b**3 + 2 * a * b**2 - a * b - a
        + b**5 + b**4 + b**2 + b
    )
    P1 = (
        4 * a**3 * b**2 + 8 * a**3 * b + 4 * a**3
        + a**2 * b**3 + 7 * a**2 * b**2 + 7 * a**2 * b + a**2
        + 2 * a * b**4 - 4 * a * b**3 - 12 * a * b**2 - 4 * a * b + 2 * a
        - b**5 - 6 * b**4 - b**3 - b**2 - 6 * b - 1
    )
    P2 = (
        -2 * a**2 * b**2 - 4 * a**2 * b - 2 * a**2
        - a * b**3 - 7 * a * b**2 - 7 * a * b - a
        - b**4 - 4 * b**3 + 2 * b**2 - 4 * b - 1
    )
    return float(P0), float(P1), float(P2)


def branch_cubic(alpha: float, beta: float, t: float) -> tuple[float, float, float, float]:
    """Coefficients (k3, k2, k1, k0) of k3 s^3 + k2 s^2 + k1 s + k0 = 0

    The roots are the signed eigenvalues s of S(t); Gram eigenvalues are s^2.
    """
    a, b = alpha, beta
    S = a**2 + a + b**2 + (a - 1.0) * b + 1.0
    k3 = 2.0 * (b + 1.0) * S
    k2 = -2.0 * (b + 1.0) * (-a + b + 1.0) * S - 2.0 * (b + 1.0) * t * S
    k1 = t * (
        2 * a**2 * (b + 1) ** 2 + a * (b * (b + 6) + 1) * (b + 1) + b * (b * (b * (b + 4) - 2) + 4) + 1
    ) - 2.0 * (b + 1.0) * S * (a * (b + 1.0) - b)
    k0 = 2.0 * a * b * (b + 1.0) * S - b * t * (2 * a**2 + 2 * a * (a + 4) * b + b**3 + b**2 + b + 1)
    return k3, k2, k1, k0


def solve_cubic_real(k3: float, k2: float, k1: float, k0: float) -> np.ndarray:
    """Real parts of the three roots, ascending, by Cardano's formula

    The roots are -c/3 + (z C + conj(z) D0 / C) / 3 for the three z with
    z^3 = -1, on the monic cubic s^3 + c s^2 + b s + a.
    """
    if k3 == 0.0:
        raise InvalidInputError("Leading cubic coefficient vanishes")
    c, b, a = k2 / k3, k1 / k3, k0 / k3
    d0 = c * c - 3.0 * b
    d1 = 2.0 * c**3 - 9.0 * c * b + 27.0 * a
    root = cmath.sqrt(d1 * d1 - 4.0 * d0**3)
    w = (d1 + root) / 2.0
    if abs(d1 - root) > abs(d1 + root):
        w = (d1 - root) / 2.0
    if w == 0:
        return np.full(3, -c / 3.0)

    C = w ** (1.0 / 3.0)
    zetas = (-1.0, cmath.exp(1j * math.pi / 3.0), cmath.exp(-1j * math.pi / 3.0))
    roots = [-c / 3.0 + (z * C + z.conjugate() * d0 / C) / 3.0 for z in map(complex, zetas)]
    return np.sort(np.array([r.real for r in roots]))


def _labelled(t: float, signed: np.ndarray) -> PencilBranches:
    """Signed-sorted eigenvalues of S(t) are (mid, min, max) branches in that order"""
    s_mid, s_min, s_max = signed
    return PencilBranches(t=float(t), lam_min=float(s_min**2), lam_mid=float(s_mid**2), lam_max=float(s_max**2))


def branch_eigenvalues(
    F: SingularForm,
    t: float,
    cubic: Callable[[float, float, float], tuple] = branch_cubic,
) -> PencilBranches:
    """Gram eigenvalue branches along A + tB0 from the closed-form cubic

    The optimal direction B0 is implied by (alpha, beta).

    Args:
        F: Singular form with 1 < alpha < beta
        t: Pencil parameter
        cubic: Coefficient function (replaceable for fault injection)

    Returns:
        PencilBranches labelled by continuity from t = 0
    """
    signed = solve_cubic_real(*cubic(F.alpha, F.beta, t))
    return _labelled(t, signed)


def symmetric_factor(F: SingularForm, t: float, tol: Optional[Tolerances] = None) -> np.ndarray:
    """S(t) = diag(1, -alpha, beta) + t u0 u0^T with A + tB0 = J S(t)"""
    u0 = optimal_direction(F, tol).u
    return np.diag([1.0, -F.alpha, F.beta]) + t * np.outer(u0, u0)


def numeric_branches(F: SingularForm, ts, tol: Optional[Tolerances] = None) -> list[PencilBranches]:
    """Branches from LAPACK eigenvalues of the symmetric factor"""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    u0 = optimal_direction(F, tol).u
    base = np.diag([1.0, -F.alpha, F.beta])
    stack = base[None, :, :] + ts[:, None, None] * np.outer(u0, u0)[None, :, :]
    signed = np.linalg.eigvalsh(stack)
    return [_labelled(t, s) for t, s in zip(ts, signed)]


def _squared_components(F: SingularForm) -> np.ndarray:
    p, m, q = optimal_components(F.alpha, F.beta)
    return np.array([p * p, m * m, q * q])


def pencil_charpoly(
    F: SingularForm, B0: RankOneDir, lam: float, tol: Optional[Tolerances] = None
) -> tuple[float, float, float]:
    """det[(A + tB0)^T (A + tB0) - lam^2 I] = c2 t^2 + c1 t + c0

    The Gram perturbation has rank two, so the determinant lemma leaves a
    quadratic in t. With d_i = a_i^2 - lam^2 and a = (1, alpha, beta):
    c0 = d1 d2 d3, c1 = 2 sum a_i v_i u_i prod_{j != i} d_j and
    c2 = sum u_i^2 prod_{j != i} d_j - sum_{i<k} (a_i v_i u_k - a_k v_k u_i)^2 d_m.

    Args:
        F: Singular form with 1 < alpha < beta
        B0: Rank-one direction in the normalized frame
        lam: Signed square root of the Gram variable
        tol: Tolerance profile

    Returns:
        (c2, c1, c0)
    """
    require_distinct(F, tol)
    a = np.array([1.0, F.alpha, F.beta])
    u, v = B0.u, B0.v
    Lam = lam * lam
    d = a * a - Lam
    x = a * v

    c0 = float(np.prod(d))
    c1 = 0.0
    c2 = 0.0
    for i in range(3):
        others = float(np.prod([d[j] for j in range(3) if j != i]))
        c1 += 2.0 * x[i] * u[i] * others
        c2 += u[i] ** 2 * others
    for i, k in itertools.combinations(range(3), 2):
        m = 3 - i - k
        c2 -= (x[i] * u[k] - x[k] * u[i]) ** 2 * d[m]
    return float(c2), float(c1), c0


def charpoly_by_interpolation(F: SingularForm, B0: RankOneDir, lam: float, n_points: int = 9) -> np.ndarray:
    """Least-squares fit of the degree-6 polynomial t -> det[...] on sample points

    Returns:
        Coefficients from t^6 down to t^0 (numpy.polyfit order)
    """
    D = F.diagonal
    Bm = B0.matrix()
    ts = np.linspace(-1.0, 1.0, n_points)
    values = []
    for t in ts:
        M = D + t * Bm
        values.append(np.linalg.det(M.T @ M - lam * lam * np.eye(3)))
    return np.polyfit(ts, values, 6)


def t_of_lambda(F: SingularForm, lam: float, r: Optional[float] = None, tol: Optional[Tolerances] = None) -> float:
    """Pencil parameter at which ``lam`` is a signed eigenvalue of S(t)

    t = (1 - lam)(alpha + lam)(beta - lam) / den with
    den = (1 - r^2)(-alpha - lam)(beta - lam) + (r^2 (1 + beta) - beta)(1 - lam)(beta - lam)
          + beta (1 - r^2)(1 - lam)(-alpha - lam).
    Then lam^2 is a Gram eigenvalue of A + tB0.

    Args:
        F: Singular form with 1 < alpha < beta
        lam: Signed eigenvalue (either square root of the Gram eigenvalue)
        r: First spherical radius of B0; defaults to that of the optimal direction
        tol: Tolerance profile

    Raises:
        PoleError: If the denominator vanishes
    """
    tol = tol or get_tolerances()
    alpha, beta = F.alpha, F.beta
    if r is None:
        u1_sq = _squared_components(F)[0]
        r2 = 1.0 - u1_sq
    else:
        r2 = r * r
    num = (1.0 - lam) * (alpha + lam) * (beta - lam)
    den = (
        (1.0 - r2) * (-alpha - lam) * (beta - lam)
        + (r2 * (1.0 + beta) - beta) * (1.0 - lam) * (beta - lam)
        + beta * (1.0 - r2) * (1.0 - lam) * (-alpha - lam)
    )
    if abs(den) <= tol.pole * max(1.0, beta * beta, lam * lam):
        raise PoleError(f"t(lambda) has a pole at lambda={lam} for Sing(1, {alpha:g}, {beta:g})")
    return num / den


def crossing_gram_values(F: SingularForm, tol: Optional[Tolerances] = None) -> tuple[float, float]:
    """Gram eigenvalues at the two crossings

    Two signed eigenvalues s and -s of S(t) at the same t require
    sum u_i^2 / (a_i^2 - s^2) = 0, a quadratic in s^2 with one root in
    (1, alpha^2) (the t_plus crossing) and one in (alpha^2, beta^2).

    Returns:
        (gram_plus, gram_minus)
    """
    require_distinct(F, tol)
    w = _squared_components(F)
    one, a2, b2 = 1.0, F.alpha**2, F.beta**2
    pairs = ((a2, b2), (one, b2), (one, a2))
    lin = -sum(wi * (x + y) for wi, (x, y) in zip(w, pairs))
    const = sum(wi * x * y for wi, (x, y) in zip(w, pairs))
    lead = float(np.sum(w))
    disc = lin * lin - 4.0 * lead * const
    if disc < 0:
        raise CrossingError(f"No real crossing values for Sing(1, {F.alpha:g}, {F.beta:g})")
    q = -0.5 * (lin + math.copysign(math.sqrt(disc), lin))
    roots = sorted([q / lead, const / q])
    return roots[0], roots[1]


def _stable_quadratic_roots(a: float, b: float, c: float) -> tuple[float, float]:
    """Roots of a x^2 + b x + c = 0 without cancellation"""
    disc = b * b - 4.0 * a * c
    if disc < 0:
        raise CrossingError(f"Crossing quadratic has no real roots (discriminant {disc:g})")
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    if q == 0.0:
        raise CrossingError("Crossing quadratic is degenerate")
    return q / a, c / q


def crossing_interval(
    F: SingularForm,
    quadratic: Callable[[float, float], QuadraticCoefficients] = crossing_quadratic,
    tol: Optional[Tolerances] = None,
) -> CrossingInterval:
    """Solve for t_minus < 0 < t_plus and certify them as branch crossings

    Args:
        F: Singular form with 1 < alpha < beta
        quadratic: Coefficient function (replaceable for fault injection)
        tol: Tolerance profile

    Returns:
        CrossingInterval with the distortion at both ends

    Raises:
        DegenerateSpectrumError: If two singular values coincide
        CrossingError: If the roots fail a consistency check
    """
    tol = tol or get_tolerances()
    require_distinct(F, tol)
    P0, P1, P2 = quadratic(F.alpha, F.beta)
    scale = max(abs(P0), abs(P1), abs(P2))
    if not math.isfinite(scale) or P2 == 0.0:
        raise CrossingError(f"Crossing quadratic is degenerate for Sing(1, {F.alpha:g}, {F.beta:g})")

    # raw coefficients span many orders of magnitude once alpha is large
    r1, r2 = _stable_quadratic_roots(P2 / scale, P1 / scale, -P0 / scale)
    if not (math.isfinite(r1) and math.isfinite(r2)) or max(abs(r1), abs(r2)) * tol.abs_floor > 1.0:
        raise CrossingError(
            f"Crossing quadratic is degenerate for Sing(1, {F.alpha:g}, {F.beta:g}): roots ({r1:g}, {r2:g})"
        )
    t_minus, t_plus = min(r1, r2), max(r1, r2)
    if not (t_minus < 0.0 < t_plus):
        raise CrossingError(f"Crossing roots ({t_minus:g}, {t_plus:g}) do not straddle 0")

    at_minus, at_plus = numeric_branches(F, [t_minus, t_plus], tol)
    if not tol.close(at_plus.lam_min, at_plus.lam_mid, tol.crossing_gap):
        raise CrossingError(
            f"Branches do not meet at t_plus={t_plus:.12g}: lam_min={at_plus.lam_min:.12g}, lam_mid={at_plus.lam_mid:.12g}"
        )
    if not tol.close(at_minus.lam_mid, at_minus.lam_max, tol.crossing_gap):
        raise CrossingError(
            f"Branches do not meet at t_minus={t_minus:.12g}: lam_mid={at_minus.lam_mid:.12g}, lam_max={at_minus.lam_max:.12g}"
        )

    h_plus = at_plus.distortion
    h_minus = at_minus.distortion
    h_A = F.beta
    if not max(h_plus, h_minus) < h_A:
        raise CrossingError(f"Distortion at the crossings ({h_minus:g}, {h_plus:g}) is not below H(A)={h_A:g}")
    if tol.close(h_plus, h_minus):
        logger.info(f"Crossings of Sing(1, {F.alpha:g}, {F.beta:g}) have equal distortion {h_plus:.12g}")

    gram_plus, gram_minus = crossing_gram_values(F, tol)
    logger.info(f"Crossing interval for Sing(1, {F.alpha:g}, {F.beta:g}): [{t_minus:.6g}, {t_plus:.6g}]")
    return CrossingInterval(
        t_minus=t_minus,
        t_plus=t_plus,
        h_minus=h_minus,
        h_plus=h_plus,
        gram_minus=gram_minus,
        gram_plus=gram_plus,
    )


def _gram_stack(F: SingularForm, B0: RankOneDir, ts: np.ndarray):
    stack = F.diagonal[None, :, :] + ts[:, None, None] * B0.matrix()[None, :, :]
    gram = np.transpose(stack, (0, 2, 1)) @ stack
    return np.linalg.eigh(gram)


def _best_permutation(previous: np.ndarray, current: np.ndarray) -> tuple[int, ...]:
    overlap = np.abs(previous.T @ current)
    return max(itertools.permutations(range(3)), key=lambda p: sum(overlap[i, p[i]] for i in range(3)))


def track_branches(F: SingularForm, B0: RankOneDir, ts: Sequence[float]) -> list[PencilBranches]:
    """Numeric Gram branches of A + tB0 followed by eigenvector overlap

    Walks outward from t = 0 on each side, so ``ts`` should be fine enough for
    eigenvectors to move little between consecutive points.
    """
    ts = np.asarray(ts, dtype=float)
    result: dict[int, PencilBranches] = {}
    for side in (1.0, -1.0):
        idx = np.where(ts >= 0)[0] if side > 0 else np.where(ts < 0)[0]
        if idx.size == 0:
            continue
        idx = idx[np.argsort(side * ts[idx])]
        path = np.concatenate([[0.0], ts[idx]])
        values, vectors = _gram_stack(F, B0, path)
        basis = vectors[0]
        for step, i in enumerate(idx, start=1):
            perm = _best_permutation(basis, vectors[step])
            basis = vectors[step][:, perm]
            lam = values[step][list(perm)]
            result[int(i)] = PencilBranches(float(ts[i]), float(lam[0]), float(lam[1]), float(lam[2]))
    return [result[i] for i in range(len(ts))]


def _signed_gap(F: SingularForm, B0: RankOneDir, pair: int, reference: np.ndarray):
    """Gap of sorted pair (pair, pair+1), negative once the branches have swapped"""

    def gap(t: float) -> float:
        values, vectors = _gram_stack(F, B0, np.array([t]))
        lower = vectors[0][:, pair]
        same = abs(np.dot(lower, reference[:, 0])) >= abs(np.dot(lower, reference[:, 1]))
        width = values[0][pair + 1] - values[0][pair]
        return float(width if same else -width)

    return gap


def _kink_candidates(gap: np.ndarray) -> np.ndarray:
    left = gap[1:-1] - gap[:-2]
    right = gap[2:] - gap[1:-1]
    local_min = (left <= 0) & (right >= 0)
    sharp = gap[1:-1] <= 2.0 * np.maximum(np.abs(left), np.abs(right))
    return np.where(local_min & sharp)[0] + 1


def _scan_side(F, B0, side, max_t, points, tol):
    start, end, step_prev = 0.0, 1.0, None
    while start < max_t:
        lo = start if step_prev is None else max(0.0, start - 2.0 * step_prev)
        ts = side * np.linspace(lo, end, points + 1)
        values, vectors = _gram_stack(F, B0, ts)
        hits = []
        for pair in (0, 1):
            for i in _kink_candidates(values[:, pair + 1] - values[:, pair]):
                hits.append((int(i), pair))
        for i, pair in sorted(hits):
            reference = vectors[i - 1][:, [pair, pair + 1]]
            gap = _signed_gap(F, B0, pair, reference)
            a, b = sorted((float(ts[i - 1]), float(ts[i + 1])))
            try:
                t_star = brentq(gap, a, b, xtol=tol.bisect_xtol, rtol=4 * np.finfo(float).eps)
            except ValueError:
                logger.debug(f"Avoided crossing near t={ts[i]:.6g}, continuing scan")
                continue
            logger.debug(f"Scan found crossing of sorted pair {pair} at t={t_star:.12g}")
            return t_star
        step_prev = (end - lo) / points
        start, end = end, 2.0 * end
    raise CrossingError(f"No branch crossing found for |t| <= {max_t:g}")


def scan_crossings(
    F: SingularForm,
    B0: Optional[RankOneDir] = None,
    points_per_window: int = SCAN_POINTS_PER_WINDOW,
    max_t: Optional[float] = None,
    tol: Optional[Tolerances] = None,
) -> tuple[float, float]:
    """Scan-and-bisect detection of the first crossing on each side of 0

    Windows [0, 1], [1, 2], [2, 4], ... are sampled with ``points_per_window``
    points; a sharp local minimum of a sorted Gram gap is confirmed by a sign
    change of the overlap-tracked gap and refined with brentq.

    Returns:
        (t_minus, t_plus)
    """
    tol = tol or get_tolerances()
    B0 = B0 or optimal_direction(F, tol)
    max_t = max_t or 10.0 * (F.beta + 1.0)
    t_plus = _scan_side(F, B0, 1.0, max_t, points_per_window, tol)
    t_minus = _scan_side(F, B0, -1.0, max_t, points_per_window, tol)
    return t_minus, t_plus


def detect_kink(ts, values, factor: Optional[float] = None) -> Optional[float]:
    """Location of a second-difference spike, or None if the samples are smooth

    A kink is reported when max |second difference| exceeds ``factor`` times
    the median |second difference|. Samples must be uniformly spaced.
    """
    factor = factor or get_tolerances().kink_factor
    ts = np.asarray(ts, dtype=float)
    values = np.asarray(values, dtype=float)
    if values.size < 5:
        return None
    second = np.abs(np.diff(values, 2))
    median = max(float(np.median(second)), np.finfo(float).tiny)
    i = int(np.argmax(second))
    if second[i] > factor * median:
        return float(ts[i + 1])
    return None


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of the sampled check of H(A + tB0) on [t_minus, t_plus]"""

    passed: bool
    h_A: float
    max_sampled: float
    t_at_max: float
    h_minus: float
    h_plus: float
    max_second_difference: float
    samples: int

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "h_A": self.h_A,
            "max_sampled": self.max_sampled,
            "t_at_max": self.t_at_max,
            "h_minus": self.h_minus,
            "h_plus": self.h_plus,
            "max_second_difference": self.max_second_difference,
            "samples": self.samples,
        }


def concavity_certificate(
    F: SingularForm,
    B0: Optional[RankOneDir] = None,
    interval: Optional[CrossingInterval] = None,
    samples: int = CERTIFICATE_SAMPLES,
    tol: Optional[Tolerances] = None,
) -> CertificateReport:
    """Sample H(A + tB0) on [t_minus, t_plus] and certify the laminate interval

    Asserts that no sample exceeds H(A), that both endpoints lie strictly
    below H(A) and that the samples carry no kink.

    Raises:
        CertificateError: With the offending t when an assertion fails
    """
    tol = tol or get_tolerances()
    B0 = B0 or optimal_direction(F, tol)
    interval = interval or crossing_interval(F, tol=tol)
    ts = np.linspace(interval.t_minus, interval.t_plus, samples)
    stack = F.diagonal[None, :, :] + ts[:, None, None] * B0.matrix()[None, :, :]
    h = distortion_batch(stack)
    h_A = F.beta

    i_max = int(np.argmax(h))
    if h[i_max] > h_A * (1.0 + 1e-12):
        raise CertificateError(f"H exceeds H(A)={h_A:g} at t={ts[i_max]:.12g}", t=float(ts[i_max]))
    for end in (0, -1):
        if not h[end] < h_A:
            raise CertificateError(f"Endpoint distortion {h[end]:.12g} is not below H(A)={h_A:g}", t=float(ts[end]))
    kink = detect_kink(ts, h, tol.kink_factor)
    if kink is not None:
        raise CertificateError(f"H(A + tB0) has a kink at t={kink:.12g}", t=kink)

    report = CertificateReport(
        passed=True,
        h_A=h_A,
        max_sampled=float(h[i_max]),
        t_at_max=float(ts[i_max]),
        h_minus=float(h[0]),
        h_plus=float(h[-1]),
        max_second_difference=float(np.max(np.diff(h, 2))),
        samples=samples,
    )
    logger.info(f"Certificate passed for Sing(1, {F.alpha:g}, {F.beta:g}): max H={report.max_sampled:.12g}")
    return report


def branch_monotonicity(
    F: SingularForm, interval: CrossingInterval, samples: int = 1000, tol: Optional[Tolerances] = None
) -> dict:
    """Check lam_min and lam_max nondecreasing and lam_mid nonincreasing on the interval"""
    ts = np.linspace(interval.t_minus, interval.t_plus, samples)
    branches = numeric_branches(F, ts, tol)
    lam = np.array([[b.lam_min, b.lam_mid, b.lam_max] for b in branches])
    steps = np.diff(lam, axis=0)
    slack = 1e-10 * np.maximum(np.abs(lam[1:]), 1.0)
    return {
        "lam_min_nondecreasing": bool(np.all(steps[:, 0] >= -slack[:, 0])),
        "lam_mid_nonincreasing": bool(np.all(steps[:, 1] <= slack[:, 1])),
        "lam_max_nondecreasing": bool(np.all(steps[:, 2] >= -slack[:, 2])),
    }


def branch_table(F: SingularForm, ts: Sequence[float]) -> list[dict]:
    """Rows (t, lam_min, lam_mid, lam_max, H) from the closed-form branches"""
    return [branch_eigenvalues(F, float(t)).to_dict() for t in ts]


__all__ = [
    "crossing_quadratic",
    "branch_cubic",
    "solve_cubic_real",
    "branch_eigenvalues",
    "symmetric_factor",
    "numeric_branches",
    "pencil_charpoly",
    "charpoly_by_interpolation",
    "t_of_lambda",
    "crossing_gram_values",
    "crossing_interval",
    "track_branches",
    "scan_crossings",
    "detect_kink",
    "CertificateReport",
    "concavity_certificate",
    "branch_monotonicity",
    "branch_table",
]
