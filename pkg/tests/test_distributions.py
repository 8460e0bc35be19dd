import math

import pytest
from scipy import stats as sps

from petest.distributions import (
    TailProbability,
    chi2_2_cdf,
    chi2_2_quantile,
    chi2_2_survival,
    normal_cdf,
    normal_quantile,
    normal_sf,
)


def test_normal_cdf_at_zero():
    assert normal_cdf(0.0) == 0.5


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 5.0])
def test_normal_cdf_symmetry(x):
    assert abs(normal_cdf(x) + normal_cdf(-x) - 1.0) <= 1e-12


def test_normal_cdf_known_quantile():
    assert abs(normal_cdf(1.959963985) - 0.975) <= 1e-9


@pytest.mark.parametrize("x", [-30.0, -8.0, -3.3, -1.0, -0.2, 0.0, 0.4, 1.7, 4.0, 9.0])
def test_normal_cdf_matches_scipy(x):
    assert abs(normal_cdf(x) - sps.norm.cdf(x)) <= 1e-12
    assert math.isclose(normal_sf(x), sps.norm.sf(x), rel_tol=1e-12, abs_tol=1e-300)


def test_lower_tail_keeps_relative_accuracy():
    assert math.isclose(normal_cdf(-20.0), sps.norm.cdf(-20.0), rel_tol=1e-12)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_normal_cdf_rejects_non_finite(bad):
    with pytest.raises(ValueError):
        normal_cdf(bad)


def test_quantile_of_half_is_zero():
    assert abs(normal_quantile(0.5)) <= 1e-12


@pytest.mark.parametrize("p", [1e-12, 0.01, 0.02425, 0.05, 0.3, 0.5, 0.95, 0.99, 1 - 1e-9])
def test_quantile_round_trip(p):
    assert abs(normal_cdf(normal_quantile(p)) - p) <= 1e-10


def test_quantile_095():
    assert abs(normal_quantile(0.95) - 1.6449) <= 1e-3
    assert abs(normal_quantile(0.95) - sps.norm.ppf(0.95)) <= 1e-12


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, math.nan])
def test_quantile_domain(p):
    with pytest.raises(ValueError):
        normal_quantile(p)


def test_cdf_strictly_increasing_on_grid():
    xs = [-6 + 0.01 * k for k in range(1201)]
    vals = [normal_cdf(x) for x in xs]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_chi2_two_closed_forms():
    assert chi2_2_survival(0.0) == 1.0
    assert abs(chi2_2_quantile(0.95) - (-2 * math.log(0.05))) <= 1e-12
    assert abs(chi2_2_quantile(0.95) - 5.9915) <= 1e-4
    for x in (0.1, 1.0, 5.9915, 30.0):
        assert math.isclose(chi2_2_survival(x), sps.chi2.sf(x, 2), rel_tol=1e-13)
        assert abs(chi2_2_cdf(x) + chi2_2_survival(x) - 1.0) <= 1e-15


@pytest.mark.parametrize("p", [0.9, 0.95, 0.99])
def test_chi2_round_trip(p):
    assert abs(chi2_2_survival(chi2_2_quantile(p)) - (1 - p)) <= 1e-14


def test_chi2_domain():
    with pytest.raises(ValueError):
        chi2_2_survival(-1.0)
    with pytest.raises(ValueError):
        chi2_2_quantile(1.0)


def test_tail_probability_validates():
    assert TailProbability(0.3).side == "upper"
    with pytest.raises(ValueError):
        TailProbability(1.2)
    with pytest.raises(ValueError):
        TailProbability(0.2, side="both")
