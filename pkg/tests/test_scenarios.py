import math

import numpy as np
import pytest

from petest.errors import ParameterError
from petest.model import DirichletMembership, FixedMembership, PureMembership, make_rng
from petest.scenarios import SCENARIOS, build_scenario, is_null_scenario, preset_scenario, scenario_knobs


@pytest.mark.parametrize("name", sorted(SCENARIOS))
def test_every_scenario_builds(name):
    params, rep = preset_scenario(name)
    assert params.P.shape == (params.K, params.K)
    assert rep.beta_n == max(rep.delta_n, rep.tau_n)


def test_null_scenarios():
    assert is_null_scenario("er") and is_null_scenario("exp4_er")
    assert not is_null_scenario("exp4_symmetric")
    with pytest.raises(ParameterError):
        is_null_scenario("nope")


def test_unknown_knob():
    with pytest.raises(ParameterError, match="knob"):
        build_scenario("exp2_1", q=3)


def test_derived_defaults():
    p = build_scenario("exp2_2", n=256)
    a = 1 + 256**-0.25
    eta = np.array([a, 1.0]) / math.hypot(a, 1.0)
    assert np.allclose(p.P, 0.2 * np.outer(eta, eta))
    assert scenario_knobs("exp2_2")["a"] is None
    p = build_scenario("exp4_rank1", n=400)
    assert math.isclose(p.P[0, 0] / p.P[1, 1], 1.05**2)


def test_random_b_draw():
    bs = [build_scenario("exp4_asymmetric", make_rng(1, k)).P[0, 1] for k in range(200)]
    assert 0.125 <= min(bs) and max(bs) <= 0.175 and np.std(bs) > 0.01
    assert build_scenario("exp4_asymmetric").P[0, 1] == 0.15


def test_membership_kinds():
    assert isinstance(build_scenario("exp4_symmetric").membership, FixedMembership)
    assert isinstance(build_scenario("exp4_asymmetric").membership, PureMembership)
    assert isinstance(build_scenario("exp4_rank1_mm").membership, DirichletMembership)
