import math

import numpy as np
import pytest

from qcdistortion.errors import InvalidInputError
from qcdistortion.models import (
    Command,
    CrossingInterval,
    PencilBranches,
    RankOneDir,
    RunConfig,
    SingularForm,
    SphericalParam,
)


@pytest.mark.parametrize("alpha, beta", [(0.5, 2.0), (3.0, 2.0), (math.nan, 2.0)])
def test_sing_parameters(alpha, beta):
    with pytest.raises(InvalidInputError):
        SingularForm.sing(alpha, beta)


def test_rank_one_matrix_acts_as_u_dot_x_times_v():
    d = RankOneDir(np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]))
    np.testing.assert_array_equal(d.matrix() @ np.array([2.0, 3.0, 5.0]), [0.0, 0.0, 3.0])


def test_rank_one_rejects_bad_vectors():
    with pytest.raises(InvalidInputError):
        RankOneDir(np.ones(2), np.ones(3))


def test_spherical_round_trip():
    param = SphericalParam(r=0.6, s=0.8, theta1=0.4, theta2=2.5)
    back = SphericalParam.from_direction(param.direction())
    assert (back.r, back.s, back.theta1, back.theta2) == pytest.approx((0.6, 0.8, 0.4, 2.5))
    with pytest.raises(InvalidInputError):
        SphericalParam(r=1.5, s=0.0, theta1=0.0, theta2=0.0)


def test_branch_distortion_uses_extremes_in_any_order():
    branches = PencilBranches(t=1.0, lam_min=9.0, lam_mid=1.0, lam_max=4.0)
    assert branches.distortion == pytest.approx(3.0)
    assert branches.to_dict()["H"] == pytest.approx(3.0)


def test_interval_fraction():
    interval = CrossingInterval(t_minus=-3.0, t_plus=1.0, h_minus=2.0, h_plus=2.5)
    assert interval.fraction_plus == pytest.approx(0.75)


def test_run_config_dict_omits_unset_inputs():
    data = RunConfig(command=Command.SWEEP, alphas=[2.0], betas=[4.0]).to_dict()
    assert data["command"] == "sweep"
    assert "matrix" not in data and "sing" not in data and "checks" not in data
    assert data["energy"] == {"family": "identity"}
