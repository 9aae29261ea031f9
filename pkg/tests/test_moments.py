import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fisherbound.core import InsufficientSamplesError, NonFiniteError, UnsupportedSupportError
from fisherbound.moments import (
    MomentMethod,
    MonteCarloMoments,
    moment_curve,
    moments_analytic,
    moments_enumerate,
    moments_mc,
    moments_quadrature,
)
from fisherbound.systems import (
    FiniteDiscreteModel,
    HardLimiterModel,
    exp_variance_gaussian,
    gaussian_location,
    laplace_location,
    sample,
)

# erf(1/sqrt(2)) and 1 - erf(1/sqrt(2))**2, from mpmath
MEAN_AT_1 = 0.6826894921370859
VAR_AT_1 = 0.5339350573256077


def test_enumeration_examples(oracle):
    hl = HardLimiterModel(0.0)
    c = moments_enumerate(hl, 0.0)
    assert c.method is MomentMethod.ENUMERATION
    assert c.mean[0] == 0.0 and c.covariance.entries[0, 0] == 1.0
    c = moments_enumerate(hl, 1.0)
    assert c.mean[0] == pytest.approx(MEAN_AT_1, rel=1e-14)
    assert c.covariance.entries[0, 0] == pytest.approx(VAR_AT_1, rel=1e-13)
    assert c.mean[0] == pytest.approx(float(oracle.mean(1)), rel=1e-14)


def test_enumeration_point_mass():
    point = FiniteDiscreteModel([1.0, -1.0], lambda t: np.array([1.0, 0.0]))
    c = moments_enumerate(point, 0.0)
    assert c.mean[0] == 1.0 and c.covariance.entries[0, 0] == 0.0


def test_enumeration_rejects_continuous_support():
    with pytest.raises(UnsupportedSupportError):
        moments_enumerate(gaussian_location(1.0), 0.0)


@pytest.mark.parametrize(
    "model, theta, mean, var, tol",
    [
        (gaussian_location(1.0), 3.0, 3.0, 1.0, 1e-10),
        (laplace_location(1.0), 0.0, 0.0, 2.0, 1e-8),
        (exp_variance_gaussian(), 1.0, 1.0, math.e, 1e-10),
    ],
)
def test_quadrature_examples(model, theta, mean, var, tol):
    c = moments_quadrature(model, theta)
    assert c.method is MomentMethod.QUADRATURE
    assert abs(c.mean[0] - mean) <= tol
    assert abs(c.covariance.entries[0, 0] - var) <= tol * max(1.0, var)
    assert c.warnings == ()


def test_mc_examples():
    c = moments_mc(sample(HardLimiterModel(0.0), 0.0, 1, 10**6), seed=1)
    assert abs(c.mean[0]) <= 4e-3
    assert abs(c.covariance.entries[0, 0] - 1.0) <= 1e-2
    assert c.mc_stderr is not None and c.n_samples == 10**6
    const = moments_mc(np.ones((100, 1)))
    assert const.mean[0] == 1.0 and const.covariance.entries[0, 0] == 0.0
    g = moments_mc(sample(gaussian_location(1.0), 2.0, 2, 10**6))
    assert abs(g.mean[0] - 2.0) <= 4e-3


def test_mc_errors():
    with pytest.raises(InsufficientSamplesError):
        moments_mc(np.zeros((3, 2)))
    with pytest.raises(NonFiniteError):
        moments_mc(np.array([0.0, 1.0, np.nan, 2.0]))


def test_mc_flags_heavy_tails():
    rng = np.random.default_rng(0)
    c = moments_mc(rng.standard_t(3, size=(20000, 1)))
    assert any("heavy-tailed" in w for w in c.warnings)


def test_mc_stderr_shrinks_as_inverse_sqrt_n():
    model = gaussian_location(1.0)
    small = moments_mc(sample(model, 0.0, 9, 4000))
    big = moments_mc(sample(model, 0.0, 9, 16 * 4000))
    for key in ("mean", "covariance"):
        ratio = small.mc_stderr[key][0, ...].item() / big.mc_stderr[key][0, ...].item()
        assert 4 / 1.5 <= ratio <= 4 * 1.5


def test_mc_stderr_covers_truth():
    # normal-theory variance of the sample variance: 2 sigma^4 / (n - 1)
    c = moments_mc(sample(gaussian_location(2.0), 0.0, 4, 10**5))
    assert c.mc_stderr["covariance"][0, 0] == pytest.approx(math.sqrt(2 * 2.0**2 / (10**5 - 1)), rel=0.02)


@given(st.floats(-4, 4))
def test_enumeration_and_quadrature_agree_with_analytic(theta):
    hl = HardLimiterModel(0.25)
    a, e = moments_analytic(hl, theta), moments_enumerate(hl, theta)
    np.testing.assert_allclose(e.mean, a.mean, atol=1e-14)
    np.testing.assert_allclose(e.covariance.entries, a.covariance.entries, atol=1e-14)
    for model in (gaussian_location(1.5), laplace_location(0.7)):
        a, q = moments_analytic(model, theta), moments_quadrature(model, theta)
        np.testing.assert_allclose(q.mean, a.mean, atol=1e-8)
        np.testing.assert_allclose(q.covariance.entries, a.covariance.entries, atol=1e-8)


def test_covariance_exactly_symmetric():
    rng = np.random.default_rng(5)
    y = rng.standard_normal((1000, 3)) @ rng.standard_normal((3, 3))
    cov = moments_mc(y).covariance.entries
    assert np.array_equal(cov, cov.T)


def test_moment_curve_dispatch():
    assert moment_curve(HardLimiterModel(0.0))(0.3).method is MomentMethod.ANALYTIC
    assert moment_curve(HardLimiterModel(0.0), "enumeration")(0.3).method is MomentMethod.ENUMERATION
    mc = moment_curve(HardLimiterModel(0.0), "mc", seed=3, n_samples=1000)
    assert isinstance(mc, MonteCarloMoments)
    assert mc(0.0).seed == 3
    with pytest.raises(ValueError):
        moment_curve(HardLimiterModel(0.0), "mc")


def test_mc_curve_is_deterministic():
    mc = MonteCarloMoments(HardLimiterModel(0.0), 8, 5000)
    assert mc(0.1) == mc(0.1)
