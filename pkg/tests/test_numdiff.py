import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fisherbound.core import CommonRandomNumbersError, EvaluationError
from fisherbound.moments import MonteCarloMoments, moment_curve, moments_mc
from fisherbound.numdiff import (
    MeanJacobian,
    analytic_jacobian,
    default_step,
    fd_weights,
    gradient_check,
    jacobian_covariance,
    jacobian_mean,
    stencil_indices,
)
from fisherbound.systems import (
    HardLimiterModel,
    exp_variance_gaussian,
    gaussian_location,
    linear_gaussian,
    sample,
)

DMEAN_AT_1 = 0.4839414490382867  # sqrt(2/pi) exp(-1/2)
DVAR_AT_1 = -0.6607634841360668  # -2 erf(1/sqrt 2) sqrt(2/pi) exp(-1/2)

HL = HardLimiterModel(0.0)
HL_CURVE = moment_curve(HL, "enumeration")


@pytest.mark.parametrize("scheme", ["central-2", "central-4"])
def test_jacobian_mean_examples(scheme):
    j = jacobian_mean(HL_CURVE, 0.0, scheme)
    assert abs(j.entries[0, 0] - math.sqrt(2 / math.pi)) <= 1e-6
    assert j.provenance == "central-difference"
    assert abs(jacobian_mean(HL_CURVE, 1.0, scheme).entries[0, 0] - DMEAN_AT_1) <= 1e-6


def test_jacobian_of_affine_map_is_exact():
    A = np.array([[1.0, 2.0], [3.0, 4.0]])
    j = jacobian_mean(moment_curve(linear_gaussian(A)), [0.3, -0.7])
    np.testing.assert_allclose(j.entries, A, atol=1e-9)


def test_jacobian_covariance_examples():
    zero = jacobian_covariance(moment_curve(linear_gaussian([[1, 2], [3, 4]])), [0.1, 0.2])
    assert zero.shape == (2, 2, 2) and np.abs(zero).max() <= 1e-6
    ev = jacobian_covariance(moment_curve(exp_variance_gaussian()), 0.0)
    assert abs(ev[0, 0, 0] - 1.0) <= 1e-6
    hl = jacobian_covariance(HL_CURVE, 1.0)
    assert abs(hl[0, 0, 0] - DVAR_AT_1) <= 1e-5


def test_gradient_check_examples():
    exact = analytic_jacobian(HL, 0.4)
    same = gradient_check(exact, exact, 1e-12)
    assert same.passed and same.max_abs_error == 0.0
    assert gradient_check(exact, jacobian_mean(HL_CURVE, 0.4), 1e-5).passed
    off = MeanJacobian(exact.entries + 1e-2, "analytic")
    assert not gradient_check(exact, off, 1e-5).passed


def test_central4_observed_order():
    x = 0.7
    exact = analytic_jacobian(HL, x).entries[0, 0]
    errs = []
    for h in (0.2, 0.1, 0.05):
        errs.append(abs(jacobian_mean(HL_CURVE, x, "central-4", h, False).entries[0, 0] - exact))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(orders >= 3.5)
    c2 = abs(jacobian_mean(HL_CURVE, x, "central-2", 0.05, False).entries[0, 0] - exact)
    assert errs[-1] < c2


def test_mc_differentiation_requires_common_random_numbers():
    # a curve that reseeds at every theta breaks CRN
    counter = iter(range(1000))
    bad = lambda t: moments_mc(sample(HL, t, next(counter), 1000), seed=None)  # noqa: E731
    with pytest.raises(CommonRandomNumbersError):
        jacobian_mean(bad, 0.0)


def test_crn_jacobian_stderr():
    mc = MonteCarloMoments(HL, 123, 10**6)
    j = jacobian_mean(mc, 0.0, check_consistency=False)
    # within 4 stderr plus the O(h^2) truncation bias
    se = j.stderr[0, 0]
    h = mc.default_step(0.0)
    bias = math.sqrt(2 / math.pi) * h * h / 6
    assert se < 0.01
    assert abs(j.entries[0, 0] - math.sqrt(2 / math.pi)) <= 4 * se + bias


def test_failed_evaluation_is_wrapped():
    def broken(t):
        raise RuntimeError("boom")

    with pytest.raises(EvaluationError):
        jacobian_mean(broken, 0.0)


def test_consistency_flags_kinks():
    # |theta| has no derivative at 0: halving the step must not look consistent
    from fisherbound.moments import MomentCurve, MomentMethod
    from fisherbound.core import CovarianceMatrix

    kinked = lambda t: MomentCurve(  # noqa: E731
        np.abs(np.asarray(t.values)) + 0.3 * np.asarray(t.values), CovarianceMatrix([[1.0]]), MomentMethod.ANALYTIC
    )
    smooth = jacobian_mean(HL_CURVE, 0.0)
    assert smooth.consistency < 1e-6
    # kink inside the full stencil but outside the halved one
    kink = jacobian_mean(kinked, 0.7 * default_step(0.0))
    assert kink.consistency > 1e-3


@given(st.lists(st.floats(-3, 3), min_size=3, max_size=5, unique=True), st.floats(-1, 1))
def test_fd_weights_exact_on_polynomials(nodes, x0):
    nodes = np.array(nodes)
    if np.min(np.abs(np.subtract.outer(nodes, nodes)) + np.eye(nodes.size) * 10) < 0.1:
        return
    w = fd_weights(nodes, x0)
    m = nodes.size
    # derivative of x**(m-1) at x0
    assert abs(w @ nodes ** (m - 1) - (m - 1) * x0 ** (m - 2)) <= 1e-7 * (1 + 3 ** m)
    assert abs(w.sum()) <= 1e-9


def test_stencil_indices():
    assert stencil_indices(5, 0).tolist() == [0, 1, 2]
    assert stencil_indices(5, 2).tolist() == [1, 2, 3]
    assert stencil_indices(5, 4).tolist() == [2, 3, 4]
    assert stencil_indices(2, 1).tolist() == [0, 1]


def test_default_step_rules():
    eps = np.finfo(float).eps
    assert default_step(0.0) == pytest.approx(eps ** (1 / 3))
    assert default_step(2.0, "central-4") == pytest.approx(3 * eps ** 0.2)


@given(st.floats(-3, 3))
def test_central_difference_matches_analytic_on_hardlimiter(theta):
    num = jacobian_mean(HL_CURVE, theta, "central-4", check_consistency=False)
    assert gradient_check(analytic_jacobian(HL, theta), num, 1e-6).passed


def test_crn_jacobian_stderr_continuous_output():
    # additive noise cancels exactly under common random numbers
    mc = MonteCarloMoments(gaussian_location(1.0), 5, 10**6)
    j = jacobian_mean(mc, 0.3, check_consistency=False)
    assert j.stderr[0, 0] <= 1e-5
    assert abs(j.entries[0, 0] - 1.0) <= 1e-6
