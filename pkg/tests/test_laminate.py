import math

import numpy as np
import pytest

from qcdistortion.errors import InvalidInputError
from qcdistortion.laminate import (
    convergence_slope,
    convergence_study,
    cube_samples,
    hadamard_jump,
    laminate_distortion,
    laminate_eval,
    laminate_gradient,
    laminate_samples,
    lamination_angle,
    lamination_angle_limit,
    optimal_laminate,
    phase_of,
    regime_strong,
    regime_weak,
    sawtooth_eval,
    sawtooth_slope,
    slab_distortion_check,
)
from qcdistortion.mat_core import random_orthogonal
from qcdistortion.models import LaminateSpec, Sawtooth, SingularForm

UNIT = Sawtooth(t_minus=-1.0, t_plus=1.0)


@pytest.fixture
def laminate24():
    return optimal_laminate(np.diag([1.0, 2.0, 4.0]))


class TestSawtooth:
    @pytest.mark.parametrize("r, expected", [(0.0, 0.0), (-1.0, 1.0), (0.5, 0.5), (-0.5, 0.5), (1.0, 1.0)])
    def test_values(self, r, expected):
        assert sawtooth_eval(UNIT, r) == pytest.approx(expected, abs=1e-15)

    def test_periodic(self):
        s = Sawtooth(t_minus=-2.04584, t_plus=1.19219)
        r = np.linspace(-3.0, 3.0, 101)
        np.testing.assert_allclose(sawtooth_eval(s, r + s.period), sawtooth_eval(s, r), atol=1e-12)
        assert UNIT.period == pytest.approx(2.0)

    def test_slopes(self):
        assert sawtooth_slope(UNIT, 0.25) == 1.0
        assert sawtooth_slope(UNIT, -0.25) == -1.0
        assert sawtooth_slope(UNIT, 1.75) == -1.0

    def test_range_is_unit_interval(self):
        s = Sawtooth(t_minus=-3.0, t_plus=0.5)
        values = sawtooth_eval(s, np.linspace(-10.0, 10.0, 2001))
        assert values.min() >= -1e-12 and values.max() <= 1.0 + 1e-12

    def test_fraction(self):
        s = Sawtooth(t_minus=-3.0, t_plus=1.0)
        assert s.fraction_plus == pytest.approx(0.75)

    def test_slopes_must_straddle_zero(self):
        with pytest.raises(InvalidInputError):
            Sawtooth(t_minus=1.0, t_plus=2.0)


class TestOptimalLaminate:
    def test_slopes_at_sing_2_4(self, laminate24):
        assert laminate24.t_plus == pytest.approx(1.19219, abs=1e-5)
        assert laminate24.t_minus == pytest.approx(-2.04584, abs=1e-5)

    def test_jump_report(self, laminate24):
        report = laminate_distortion(laminate24)
        assert report.h_A == pytest.approx(4.0)
        assert 1.0 < report.ratio <= math.sqrt(2.0)
        assert report.h_laminate == pytest.approx(max(report.h_plus, report.h_minus))
        assert report.fraction_plus == pytest.approx(2.04584 / (1.19219 + 2.04584), abs=1e-5)

    def test_rotated_frame(self, rng):
        A = 3.0 * random_orthogonal(rng) @ np.diag([1.0, 2.0, 4.0]) @ random_orthogonal(rng)
        report = laminate_distortion(optimal_laminate(A))
        reference = laminate_distortion(optimal_laminate(np.diag([1.0, 2.0, 4.0])))
        assert report.ratio == pytest.approx(reference.ratio, rel=1e-9)
        assert report.fraction_plus == pytest.approx(reference.fraction_plus, rel=1e-9)

    def test_frequency_must_be_positive(self, laminate24):
        with pytest.raises(InvalidInputError):
            LaminateSpec(laminate24.A, laminate24.B0, laminate24.t_minus, laminate24.t_plus, j=0)


class TestLaminateMap:
    @pytest.mark.parametrize("j", [1, 10, 100])
    def test_uniform_distance_from_linear_map(self, laminate24, j):
        x = cube_samples(5000, seed=1)
        Lj = laminate24.with_frequency(j)
        deviation = np.linalg.norm(laminate_eval(Lj, x) - x @ Lj.A.T, axis=1)
        assert deviation.max() <= 1.0 / j + 1e-12

    def test_gradient_is_two_valued(self, laminate24):
        grads = laminate_gradient(laminate24.with_frequency(10), cube_samples(2000))
        to_plus = np.max(np.abs(grads - laminate24.gradient_plus), axis=(1, 2))
        to_minus = np.max(np.abs(grads - laminate24.gradient_minus), axis=(1, 2))
        assert np.max(np.minimum(to_plus, to_minus)) <= 1e-12
        assert np.any(to_plus <= 1e-12) and np.any(to_minus <= 1e-12)

    def test_gradient_matches_finite_differences(self, laminate24):
        L = laminate24.with_frequency(3)
        x = np.array([0.31, 0.42, 0.27])
        h = 1e-7
        numeric = np.column_stack(
            [(laminate_eval(L, x + h * e) - laminate_eval(L, x - h * e)) / (2 * h) for e in np.eye(3)]
        )
        np.testing.assert_allclose(numeric, laminate_gradient(L, x), atol=1e-6)

    def test_phase_fraction(self, laminate24):
        rows = convergence_study(laminate24, [100], samples=100_000)
        assert rows[0].fraction_plus_sampled == pytest.approx(laminate24.sawtooth.fraction_plus, abs=0.01)

    def test_distortion_does_not_depend_on_frequency(self, laminate24):
        jump = laminate_distortion(laminate24)
        for row in convergence_study(laminate24, [1, 10, 100], samples=2000):
            assert row.h_fj == pytest.approx(jump.h_laminate, rel=1e-12)
            assert row.max_deviation <= row.bound

    def test_convergence_rate(self, laminate24):
        rows = convergence_study(laminate24, [1, 10, 100, 1000], samples=20_000)
        assert convergence_slope(rows) == pytest.approx(-1.0, abs=0.15)

    def test_frequencies_must_ascend(self, laminate24):
        with pytest.raises(InvalidInputError):
            convergence_study(laminate24, [10, 1])

    def test_sampled_distortion_in_slabs(self, laminate24):
        for row in slab_distortion_check(laminate24.with_frequency(10)):
            assert row["sampled"] == pytest.approx(row["exact"], rel=0.02)

    def test_jump_is_rank_one_across_u(self, laminate24):
        jump = hadamard_jump(laminate24)
        assert jump.rank_one
        assert jump.normal_error <= 1e-10
        assert jump.amplitude == pytest.approx(laminate24.t_plus - laminate24.t_minus, rel=1e-12)

    def test_geometry_rows(self, laminate24):
        rows = laminate_samples(laminate24, samples=10, seed=3)
        assert len(rows) == 10
        assert {row["phase"] for row in rows} <= {1, -1}
        assert rows == laminate_samples(laminate24, samples=10, seed=3)
        np.testing.assert_array_equal(
            [row["phase"] for row in rows], phase_of(laminate24, cube_samples(10, seed=3))
        )


class TestAngles:
    def test_at_sing_2_4(self, sing24):
        assert lamination_angle(sing24) == pytest.approx(math.acos(2.0 / math.sqrt(30.0)), rel=1e-12)

    def test_strong_limit(self):
        assert lamination_angle(SingularForm.sing(2.0, 1e8)) == pytest.approx(math.pi / 4.0, abs=1e-3)

    def test_consecutive_limit(self):
        assert lamination_angle(SingularForm.sing(1e6, 1e6 + 1.0)) == pytest.approx(
            math.acos(1.0 / math.sqrt(6.0)), abs=1e-3
        )
        assert lamination_angle_limit(1.0) == pytest.approx(math.acos(1.0 / math.sqrt(6.0)))

    @pytest.mark.parametrize("k", [0.25, 0.5, 0.75])
    def test_proportional_limit(self, k):
        F = SingularForm.sing(1e6, 1e6 / k)
        assert lamination_angle(F) == pytest.approx(lamination_angle_limit(k), abs=1e-5)


class TestRegimes:
    def test_strong_path(self):
        cells = regime_strong(2.0, [10.0, 100.0])
        assert cells == [(2.0, 10.0), (2.0, 100.0)]

    def test_weak_path(self):
        cells = regime_weak([0.5], [10.0, 100.0])
        assert cells == [(10.0, 20.0), (100.0, 200.0)]

    @pytest.mark.parametrize("k", [0.0, -0.5, 1.5])
    def test_weak_ratio_out_of_range(self, k):
        with pytest.raises(InvalidInputError):
            regime_weak([k], [10.0])
