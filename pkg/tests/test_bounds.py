import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from fisherbound.analysis import analyze
from fisherbound.bounds import (
    bound_multivariate,
    bound_univariate,
    equivalent_gaussian,
    gaussian_fisher_full,
    worst_case_additive_fisher,
)
from fisherbound.core import SingularCovarianceError, ZeroVarianceError
from fisherbound.exactfi import exact_fi
from fisherbound.moments import moments_analytic
from fisherbound.psdcheck import psd_order
from fisherbound.systems import (
    HardLimiterModel,
    ParametricVarianceGaussianModel,
    Reparameterized,
    exp_variance_gaussian,
    gaussian_location,
    laplace_location,
    linear_gaussian,
    scale_gaussian,
)

from conftest import mp_dmean, mp_fisher, mp_var

BOUND_AT_1 = 0.43862886110221396  # hard limiter, theta - alpha = 1, from mpmath


def test_bound_univariate_examples():
    assert bound_univariate(math.sqrt(2 / math.pi), 1.0).scalar() == pytest.approx(2 / math.pi, rel=1e-15)
    assert bound_univariate(1.0, 1.0).scalar() == 1.0
    f = bound_univariate(float(mp_dmean(1)), float(mp_var(1))).scalar()
    assert f == pytest.approx(BOUND_AT_1, rel=1e-13)
    assert f == pytest.approx(float(mp_fisher(1)), rel=1e-13)


def test_bound_univariate_zero_variance():
    with pytest.raises(ZeroVarianceError):
        bound_univariate(1.0, 0.0)


def test_bound_multivariate_examples():
    np.testing.assert_allclose(bound_multivariate(np.eye(2), np.eye(2)).entries, np.eye(2))
    A = np.array([[1.0, 2.0], [3.0, 4.0]])
    np.testing.assert_allclose(bound_multivariate(A, np.eye(2)).entries, [[10, 14], [14, 20]], atol=1e-12)
    f = bound_multivariate(np.ones((2, 1)), [[2.0, 1.0], [1.0, 2.0]])
    assert f.scalar() == pytest.approx(2 / 3, rel=1e-14)


def test_bound_multivariate_singular_covariance():
    with pytest.raises(SingularCovarianceError):
        bound_multivariate(np.eye(2), [[1.0, 1.0], [1.0, 1.0]])
    with pytest.raises(ZeroVarianceError):
        bound_multivariate(np.eye(2), np.zeros((2, 2)))
    ridged = bound_multivariate(np.eye(2), [[1.0, 1.0], [1.0, 1.0]], ridge=True)
    assert np.all(np.isfinite(ridged.entries))


@settings(max_examples=1000)
@given(
    arrays(float, (3, 2), elements=st.floats(-5, 5)),
    arrays(float, (3, 3), elements=st.floats(-3, 3)),
)
def test_bound_is_symmetric_psd(J, factor):
    sigma = factor @ factor.T + 0.1 * np.eye(3)
    f = bound_multivariate(J, sigma).entries
    assert np.array_equal(f, f.T)
    assert np.linalg.eigvalsh(f)[0] >= -1e-10 * (1 + np.trace(f))


@given(st.floats(-3, 3))
def test_variance_suppressed_gaussian_fi_equals_bound(theta):
    model = exp_variance_gaussian(slope=0.7)
    zeroed = gaussian_fisher_full(model, theta, covariance_jacobian=np.zeros((1, 1, 1)))
    c = moments_analytic(model, theta)
    bound = bound_multivariate(model.analytic_mean_jacobian(np.array([theta])), c.covariance)
    assert abs(zeroed.scalar() - bound.scalar()) <= 1e-12 * max(1.0, bound.scalar())


def test_gaussian_fisher_full_examples():
    const = ParametricVarianceGaussianModel(
        lambda t: t[:1], lambda t: np.array([1.0]), lambda t: np.eye(1), lambda t: np.zeros(1)
    )
    assert gaussian_fisher_full(const, 0.3).scalar() == pytest.approx(1.0, abs=1e-14)
    full = gaussian_fisher_full(exp_variance_gaussian(), 0.0).scalar()
    assert abs(full - 1.5) <= 1e-12
    assert abs(analyze(exp_variance_gaussian(), 0.0).bound.scalar() - 1.0) <= 1e-12
    assert abs(gaussian_fisher_full(scale_gaussian(), 1.0).scalar() - 2.0) <= 1e-12
    assert analyze(scale_gaussian(), 1.0).bound.scalar() == 0.0


def test_gaussian_fisher_full_numeric_jacobians():
    # no closed-form derivatives: falls back to central-4 differences
    model = ParametricVarianceGaussianModel(lambda t: t[:1], lambda t: np.exp(t[:1]))
    assert abs(gaussian_fisher_full(model, 0.0).scalar() - 1.5) <= 1e-9


def test_equivalent_gaussian_examples():
    eq = equivalent_gaussian(HardLimiterModel(0.0))
    c = eq.moments(1.0)
    assert c.mean[0] == pytest.approx(math.erf(1 / math.sqrt(2)), rel=1e-14)
    assert c.covariance.entries[0, 0] == pytest.approx(1 - math.erf(1 / math.sqrt(2)) ** 2, rel=1e-13)
    g = equivalent_gaussian(gaussian_location(1.0)).moments(0.4)
    assert g.mean[0] == pytest.approx(0.4) and g.covariance.entries[0, 0] == 1.0
    lap = equivalent_gaussian(laplace_location(1.0), "quadrature").moments(0.0)
    assert abs(lap.mean[0]) <= 1e-8 and abs(lap.covariance.entries[0, 0] - 2.0) <= 1e-8


def test_equivalent_gaussian_of_hardlimiter_recovers_bound():
    eq = equivalent_gaussian(HardLimiterModel(0.0))
    zeroed = gaussian_fisher_full(eq, 1.0, covariance_jacobian=np.zeros((1, 1, 1)))
    assert zeroed.scalar() == pytest.approx(BOUND_AT_1, rel=1e-12)


@pytest.mark.parametrize("c", [0.5, 2.0, -3.0])
@pytest.mark.parametrize(
    "base, phi, exact_method",
    [
        (HardLimiterModel(0.2), 0.3, "enumeration"),
        (laplace_location(1.0), 0.1, "quadrature"),
        (exp_variance_gaussian(), 0.2, "quadrature"),
    ],
    ids=["hardlimiter", "laplace", "exp-variance"],
)
def test_reparameterization_equivariance(base, phi, exact_method, c):
    rep = Reparameterized(base, c)
    theta_report = analyze(base, c * phi, exact=exact_method)
    phi_report = analyze(rep, phi, exact=exact_method)
    assert phi_report.bound.scalar() == pytest.approx(c * c * theta_report.bound.scalar(), rel=1e-9)
    assert phi_report.exact.scalar() == pytest.approx(c * c * theta_report.exact.scalar(), rel=1e-7)
    assert phi_report.ratio == pytest.approx(theta_report.ratio, rel=1e-7)


@pytest.mark.parametrize("theta", [-1.0, 0.0, 2.5])
def test_gaussian_noise_is_tight_and_laplace_is_twice_as_informative(theta):
    g = analyze(gaussian_location(1.7), theta, exact="quadrature")
    assert g.exact.scalar() == pytest.approx(g.bound.scalar(), rel=1e-8)
    assert g.bound.scalar() == pytest.approx(1 / 1.7, rel=1e-12)
    lap = analyze(laplace_location(1.0), theta, exact="quadrature")
    assert lap.exact.scalar() / lap.bound.scalar() == pytest.approx(2.0, rel=1e-6)


def test_linear_gaussian_bound_is_worst_case_fisher():
    A = np.array([[1.0, 2.0], [3.0, 4.0]])
    R = np.array([[2.0, 0.3], [0.3, 1.0]])
    expected = A.T @ np.linalg.solve(R, A)
    r = analyze(linear_gaussian(A, R), [0.1, -0.2])
    np.testing.assert_allclose(r.bound.entries, expected, rtol=1e-12)
    np.testing.assert_allclose(worst_case_additive_fisher(A, R).entries, expected, rtol=1e-12)


ZOO = [
    (HardLimiterModel(0.0), "enumeration"),
    (gaussian_location(1.0), "quadrature"),
    (laplace_location(1.0), "quadrature"),
    (exp_variance_gaussian(), "quadrature"),
    (scale_gaussian(), "quadrature"),
]


@pytest.mark.parametrize("model, method", ZOO, ids=lambda v: getattr(v, "name", v))
@settings(max_examples=10)
@given(theta=st.floats(0.2, 2.5))
def test_sandwich_holds(model, method, theta):
    report = analyze(model, theta, exact=method)
    assert psd_order(report.exact, report.bound).holds
    assert report.ratio <= 1.0 + 1e-8


def test_sandwich_holds_two_dimensional():
    model = linear_gaussian([[1, 2], [3, 4]], [[1.0, 0.4], [0.4, 2.0]])
    report = analyze(model, [0.5, -0.5], exact="quadrature")
    assert report.psd_verdict.holds
    assert report.ratio == pytest.approx(1.0, abs=1e-8)
    assert np.allclose(exact_fi(model, [0.5, -0.5]).entries, report.bound.entries, atol=1e-8)
