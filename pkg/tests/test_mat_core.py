import numpy as np
import pytest

from qcdistortion.errors import DegenerateSpectrumError, InvalidInputError, RankDeficientError
from qcdistortion.mat_core import (
    as_mat3,
    det3,
    frobenius_norm,
    gram_eigen,
    jacobi_eigen,
    matmul,
    orthonormality_error,
    random_orthogonal,
    require_distinct,
    singular_values,
    svd3,
    sym_eigen3,
    sym_eigvals_closed_form,
    transpose,
)
from qcdistortion.models import SingularForm


def _random_symmetric(rng, scale=1.0):
    M = scale * rng.standard_normal((3, 3))
    return M + M.T


class TestAsMat3:
    def test_accepts_flat_row_major(self):
        A = as_mat3(range(1, 10))
        assert A.shape == (3, 3)
        assert A[0, 2] == 3.0
        assert A[2, 0] == 7.0

    @pytest.mark.parametrize("bad", [[1, 2, 3], np.ones((2, 3)), [[1, 2, 3], [4, 5, 6], [7, 8, np.nan]]])
    def test_rejects_bad_input(self, bad):
        with pytest.raises(InvalidInputError):
            as_mat3(bad)


def test_det3_matches_lapack(rng):
    for _ in range(20):
        A = rng.standard_normal((3, 3))
        assert det3(A) == pytest.approx(np.linalg.det(A), rel=1e-12, abs=1e-14)


class TestSymmetricEigen:
    def test_closed_form_matches_eigvalsh(self, rng):
        for _ in range(50):
            S = _random_symmetric(rng, scale=10.0)
            np.testing.assert_allclose(sym_eigvals_closed_form(S), np.linalg.eigvalsh(S), rtol=0, atol=1e-10 * 20)

    def test_jacobi_matches_eigvalsh(self, rng):
        for _ in range(50):
            S = _random_symmetric(rng)
            result = jacobi_eigen(S)
            np.testing.assert_allclose(result.values, np.linalg.eigvalsh(S), atol=1e-12)
            assert result.method == "jacobi"
            assert orthonormality_error(result.vectors) < 1e-12

    def test_eigenpairs_satisfy_residual(self, rng):
        S = _random_symmetric(rng)
        eig = sym_eigen3(S)
        assert np.max(np.abs(S @ eig.vectors - eig.vectors * eig.values)) < 1e-10
        assert orthonormality_error(eig.vectors) < 1e-8

    def test_repeated_eigenvalue_falls_back_to_jacobi(self, rng):
        Q = random_orthogonal(rng)
        S = Q @ np.diag([1.0, 1.0, 2.0]) @ Q.T
        eig = sym_eigen3(0.5 * (S + S.T))
        assert eig.method == "jacobi"
        np.testing.assert_allclose(eig.values, [1.0, 1.0, 2.0], atol=1e-12)
        assert orthonormality_error(eig.vectors) < 1e-12

    def test_previous_basis_fixes_signs(self, rng):
        S = _random_symmetric(rng)
        reference = -sym_eigen3(S).vectors
        aligned = sym_eigen3(S, previous=reference)
        assert np.all(np.einsum("ij,ij->j", aligned.vectors, reference) > 0)

    def test_asymmetric_input_rejected(self):
        with pytest.raises(InvalidInputError):
            sym_eigen3(np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))


class TestGramEigen:
    def test_squared_singular_values(self, rotated_matrix):
        eig = gram_eigen(rotated_matrix)
        np.testing.assert_allclose(eig.values, singular_values(rotated_matrix) ** 2, rtol=1e-12)

    def test_vectors_are_orthonormal(self, rng):
        for _ in range(20):
            assert orthonormality_error(gram_eigen(rng.standard_normal((3, 3))).vectors) < 1e-8

    @pytest.mark.parametrize("c", [1e-3, 0.5, 7.0, 1e4])
    def test_scaling(self, rotated_matrix, c):
        scaled = gram_eigen(c * rotated_matrix).values
        np.testing.assert_allclose(scaled, c * c * gram_eigen(rotated_matrix).values, rtol=1e-10)

    def test_trace_and_determinant(self, rng):
        for _ in range(20):
            A = rng.standard_normal((3, 3))
            values = gram_eigen(A).values
            assert values.sum() == pytest.approx(np.trace(A.T @ A), rel=1e-10)
            assert values.prod() == pytest.approx(det3(A) ** 2, rel=1e-8, abs=1e-10)


class TestMatrixHelpers:
    def test_determinant_is_multiplicative(self, rng):
        for _ in range(20):
            A, B = rng.standard_normal((2, 3, 3))
            assert det3(matmul(A, B)) == pytest.approx(det3(A) * det3(B), rel=1e-10, abs=1e-12)

    def test_determinant_matches_lapack(self, rotated_matrix):
        assert det3(rotated_matrix) == pytest.approx(np.linalg.det(rotated_matrix), rel=1e-12)
        assert abs(det3(rotated_matrix)) == pytest.approx(0.5 * 1.0 * 2.0, rel=1e-12)

    def test_transpose(self, rng):
        A = rng.standard_normal((3, 3))
        T = transpose(A)
        np.testing.assert_array_equal(T, A.T)
        T[0, 1] = 99.0
        assert A[1, 0] != 99.0
        assert det3(T) == pytest.approx(det3(A), rel=1e-12)

    def test_frobenius_norm(self, rotated_matrix):
        assert frobenius_norm(np.eye(3)) == pytest.approx(3.0**0.5)
        expected = float(np.sqrt(np.sum(singular_values(rotated_matrix) ** 2)))
        assert frobenius_norm(rotated_matrix) == pytest.approx(expected, rel=1e-12)

    def test_matmul_checks_both_factors(self):
        np.testing.assert_array_equal(matmul(np.eye(3), np.arange(9.0)), np.arange(9.0).reshape(3, 3))
        with pytest.raises(InvalidInputError, match="B must be 3x3"):
            matmul(np.eye(3), np.ones(4))


class TestSvd3:
    def test_reconstructs_matrix(self, rotated_matrix):
        F = svd3(rotated_matrix)
        assert F.scale == pytest.approx(0.5)
        assert F.alpha == pytest.approx(2.0)
        assert F.beta == pytest.approx(4.0)
        np.testing.assert_allclose(F.matrix(), rotated_matrix, atol=1e-13)
        assert orthonormality_error(F.Q) < 1e-12
        assert orthonormality_error(F.R) < 1e-12

    def test_singular_matrix(self):
        with pytest.raises(RankDeficientError):
            svd3(np.diag([1.0, 2.0, 0.0]))


@pytest.mark.parametrize("alpha, beta", [(1.0, 3.0), (2.0, 2.0), (1.0, 1.0)])
def test_require_distinct_rejects_repeated_values(alpha, beta):
    with pytest.raises(DegenerateSpectrumError):
        require_distinct(SingularForm.sing(alpha, beta))


def test_random_orthogonal_is_orthonormal(rng):
    for _ in range(10):
        assert orthonormality_error(random_orthogonal(rng)) < 1e-12
