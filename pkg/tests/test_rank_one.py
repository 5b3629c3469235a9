import math

import numpy as np
import pytest

from qcdistortion.distortion import linear_distortion
from qcdistortion.errors import DegenerateSpectrumError, InvalidInputError, NonsmoothPointError
from qcdistortion.mat_core import random_orthogonal, svd3
from qcdistortion.models import RankOneDir, SingularForm, SphericalParam
from qcdistortion.rank_one import (
    closed_form_q,
    directional_series,
    grid_oracle,
    iwaniec_example,
    optimal_direction,
    q_landscape,
    q_objective,
    solve_constraint_s,
    transport_direction,
)


def _random_direction(rng):
    u = rng.standard_normal(3)
    v = rng.standard_normal(3)
    return RankOneDir(u / np.linalg.norm(u), v / np.linalg.norm(v))


class TestOptimalDirection:
    def test_components_at_sing_2_4(self, sing24):
        d = optimal_direction(sing24)
        np.testing.assert_allclose(d.u * math.sqrt(30.0), [1.0, 5.0, 2.0], atol=1e-12)
        np.testing.assert_allclose(d.v * math.sqrt(30.0), [1.0, -5.0, 2.0], atol=1e-12)
        assert d.is_unit()

    def test_second_derivative_matches_closed_form(self, sing24):
        assert closed_form_q(2.0, 4.0) == pytest.approx(1.0 / 90.0, rel=1e-14)
        series = directional_series(sing24.diagonal, optimal_direction(sing24))
        assert abs(series.d1) <= 1e-10
        assert series.d2 == pytest.approx(-1.0 / 45.0, rel=1e-10)
        assert series.well_conditioned
        assert series.fd_d2 == pytest.approx(series.d2, rel=1e-5)

    @pytest.mark.parametrize("alpha, beta", [(1.1, 1.2), (1.5, 11.0), (3.0, 7.0), (10.5, 20.0), (2.0, 1e3)])
    def test_stationary_and_decreasing(self, alpha, beta):
        F = SingularForm.sing(alpha, beta)
        series = directional_series(F.diagonal, optimal_direction(F), check_fd=False)
        assert abs(series.d1) <= 1e-8 * beta
        assert series.d2 == pytest.approx(-2.0 * closed_form_q(alpha, beta), rel=1e-6)

    def test_negated_direction_is_the_same_matrix(self, sing24):
        d = optimal_direction(sing24)
        np.testing.assert_array_equal(d.negated().matrix(), d.matrix())

    @pytest.mark.parametrize("alpha, beta", [(1.0, 3.0), (2.0, 2.0)])
    def test_degenerate_spectrum(self, alpha, beta):
        with pytest.raises(DegenerateSpectrumError):
            optimal_direction(SingularForm.sing(alpha, beta))


class TestDirectionalSeries:
    def test_agrees_with_finite_differences(self, rng, rotated_matrix):
        for _ in range(5):
            series = directional_series(rotated_matrix, _random_direction(rng))
            assert series.well_conditioned
            assert series.fd_d1 == pytest.approx(series.d1, rel=1e-6, abs=1e-8)
            assert series.fd_d2 == pytest.approx(series.d2, rel=1e-5, abs=1e-6)

    def test_repeated_extreme_eigenvalue(self, rng):
        with pytest.raises(NonsmoothPointError):
            directional_series(np.diag([1.0, 1.0, 2.0]), _random_direction(rng))


def test_transport_preserves_the_pencil(rng):
    A = random_orthogonal(rng) @ np.diag([0.5, 1.0, 2.0]) @ random_orthogonal(rng)
    F = svd3(A)
    d = optimal_direction(F)
    moved = transport_direction(F, d)
    for t in (-0.4, 0.1, 0.3):
        expected = linear_distortion(F.diagonal + (t / F.scale) * d.matrix()).h
        assert linear_distortion(A + t * moved.matrix()).h == pytest.approx(expected, rel=1e-10)


class TestGridOracle:
    def test_never_beats_the_closed_form(self, sing24):
        result = grid_oracle(sing24, n_theta=64, n_rs=32)
        closed = -1.0 / 45.0
        assert result.series.d2 >= closed - 1e-9
        assert result.series.d2 <= 0.8 * closed
        assert abs(result.series.d1) <= 1e-6
        assert result.evaluated == 64 * 64 * 32

    def test_minimizer_on_reflection_line(self, sing24):
        result = grid_oracle(sing24, n_theta=64, n_rs=32)
        spacing = math.pi / 64
        assert abs(result.param.theta1 + result.param.theta2 - math.pi) <= 4 * spacing
        closed = SphericalParam.from_direction(optimal_direction(sing24))
        assert closed.theta1 + closed.theta2 == pytest.approx(math.pi, abs=1e-12)

    def test_independent_of_worker_count(self, sing24):
        one = grid_oracle(sing24, n_theta=64, n_rs=32, workers=1)
        four = grid_oracle(sing24, n_theta=64, n_rs=32, workers=4)
        assert one.to_dict() == four.to_dict()

    def test_rejects_coarse_grids(self, sing24):
        with pytest.raises(InvalidInputError):
            grid_oracle(sing24, n_theta=8, n_rs=8)

    @pytest.mark.slow
    def test_full_resolution(self, sing24):
        result = grid_oracle(sing24)
        closed = -1.0 / 45.0
        assert closed - 1e-9 <= result.series.d2 <= closed + 0.01 * abs(closed)


class TestLandscape:
    def test_symmetry_under_reflection(self, rng, sing24):
        for _ in range(20):
            r, s = rng.uniform(0.0, 1.0, size=2)
            t1, t2 = rng.uniform(0.0, math.pi, size=2)
            left = q_objective(sing24, SphericalParam(r, s, t1, t2))
            right = q_objective(sing24, SphericalParam(s, r, math.pi - t2, math.pi - t1))
            assert left == pytest.approx(right, rel=1e-10, abs=1e-12)

    def test_objective_is_beta_times_d2_on_the_constraint(self, sing24):
        d = optimal_direction(sing24)
        param = SphericalParam.from_direction(d)
        assert q_objective(sing24, param) == pytest.approx(4.0 * (-1.0 / 45.0), rel=1e-10)

    def test_constraint_eliminates_s(self, sing24):
        s = solve_constraint_s(sing24, 0.5, 1.0, 2.0)
        u = SphericalParam(0.5, s, 1.0, 2.0).u
        v = SphericalParam(0.5, s, 1.0, 2.0).v
        assert u[2] * v[2] == pytest.approx(4.0 * u[0] * v[0], rel=1e-12)
        assert math.isnan(solve_constraint_s(sing24, 0.5, 1.0, 4.0))

    def test_rows_are_feasible(self, sing24):
        rows = q_landscape(sing24, n_theta=16)
        assert rows
        assert all(0.0 < row["theta1"] < math.pi and 0.0 < row["theta2"] < math.pi for row in rows)
        assert min(row["Q"] for row in rows) >= 4.0 * (-1.0 / 45.0) - 1e-9


@pytest.mark.parametrize("c", [1.5, 2.0, 3.0])
def test_geometric_diagonal_decreases(c):
    A, record = iwaniec_example(c)
    np.testing.assert_array_equal(A, np.diag([1.0, c, c * c]))
    assert record["h_A"] == pytest.approx(c * c)
    assert record["decreases"]
    assert record["h_t"] < record["h_A"]
    assert record["d2"] < 0
    assert record["jump"]["ratio"] > 1.0


def test_geometric_diagonal_needs_c_above_one():
    with pytest.raises(InvalidInputError):
        iwaniec_example(1.0)
