"""Moment-based lower bound on the Fisher information.

For any system whose mean and covariance curves are known, the Fisher
information dominates J^T Sigma^{-1} J with J the Jacobian of the mean. The
right-hand side is the Fisher information of a Gaussian with the same two
moments once the parameter dependence of its covariance is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg

from .core import (
    INVERTIBILITY_RTOL,
    CovarianceMatrix,
    FisherMatrix,
    FisherSource,
    ShapeMismatchError,
    SingularCovarianceError,
    ZeroVarianceError,
    symmetrize,
)
from .moments import MomentCurve, moment_curve, moments_analytic
from .numdiff import MeanJacobian, jacobian_covariance, jacobian_mean
from .quadrature import QuadratureConfig
from .systems import ParametricSystem, ParametricVarianceGaussianModel, theta_array

RIDGE_FACTOR = 1e-10


def bound_univariate(dmu: float, sigma2: float) -> FisherMatrix:
    """(dmu/dtheta)**2 / sigma**2 for scalar output and parameter."""
    if not sigma2 > 0:
        raise ZeroVarianceError(f"output variance must be positive, got {sigma2!r}")
    return FisherMatrix([[dmu * dmu / sigma2]], FisherSource.MOMENT_BOUND)


def _entries(x) -> np.ndarray:
    if isinstance(x, (MeanJacobian, CovarianceMatrix, FisherMatrix)):
        return np.array(x.entries)
    return np.atleast_2d(np.asarray(x, dtype=float))


def _factor_covariance(sigma: np.ndarray, ridge: bool):
    n = sigma.shape[0]
    if not np.any(sigma):
        raise ZeroVarianceError("output covariance is identically zero")
    if ridge:
        sigma = sigma + RIDGE_FACTOR * np.trace(sigma) / n * np.eye(n)
    eig = np.linalg.eigvalsh(sigma)
    if eig[0] <= INVERTIBILITY_RTOL * eig[-1]:
        raise SingularCovarianceError("output covariance is singular", float(eig[0]))
    return linalg.cho_factor(sigma, lower=True)


def bound_multivariate(J, Sigma, ridge: bool = False) -> FisherMatrix:
    """J^T Sigma^{-1} J via a Cholesky solve.

    ``ridge`` adds 1e-10 * trace(Sigma) / N to the diagonal first; it is
    meant for noisy empirical covariances and is off by default.
    """
    jac = _entries(J)
    sigma = symmetrize(_entries(Sigma))
    if jac.shape[0] != sigma.shape[0]:
        raise ShapeMismatchError(f"Jacobian rows {jac.shape[0]} != covariance size {sigma.shape[0]}")
    factor = _factor_covariance(sigma, ridge)
    solved = linalg.cho_solve(factor, jac)
    return FisherMatrix(symmetrize(jac.T @ solved), FisherSource.MOMENT_BOUND)


def bound_stderr(J, J_stderr, Sigma, Sigma_stderr) -> np.ndarray:
    """First-order (delta method) standard errors of J^T Sigma^{-1} J.

    Estimation errors of the Jacobian and covariance entries are treated as
    independent.
    """
    jac = _entries(J)
    sigma = symmetrize(_entries(Sigma))
    sj = np.zeros_like(jac) if J_stderr is None else _entries(J_stderr)
    ss = np.zeros_like(sigma) if Sigma_stderr is None else _entries(Sigma_stderr)
    prec = np.linalg.inv(sigma)
    pj = prec @ jac  # Sigma^{-1} J
    n, k = jac.shape
    var = np.zeros((k, k))
    for i in range(n):
        for j in range(k):
            # dF = dJ^T P J + J^T P dJ for dJ = E_ij
            d = np.zeros((k, k))
            d[j, :] += pj[i, :]
            d[:, j] += pj[i, :]
            var += (d * sj[i, j]) ** 2
    for i in range(n):
        for j in range(i, n):
            # dF = -J^T P dSigma P J for a symmetric unit perturbation
            d = np.outer(pj[i], pj[j])
            if i != j:
                d = d + d.T
            var += (d * ss[i, j]) ** 2
    return np.sqrt(var)


@dataclass(frozen=True)
class EquivalentGaussianSystem:
    """Gaussian system sharing the first two moments of ``source``."""

    base: ParametricVarianceGaussianModel
    source: ParametricSystem
    moment_method: str

    def moments(self, theta) -> MomentCurve:
        return moments_analytic(self.base, theta)


def equivalent_gaussian(
    sys: ParametricSystem,
    moment_method: str = "auto",
    cfg: QuadratureConfig = QuadratureConfig(),
    seed: Optional[int] = None,
    n_samples: int = 1_000_000,
) -> EquivalentGaussianSystem:
    """Wrap the moment curves of ``sys`` as a Gaussian model.

    Closed-form mean and covariance derivatives of ``sys`` are reused when
    available; otherwise they are taken numerically on demand.
    """
    curve = moment_curve(sys, moment_method, cfg=cfg, seed=seed, n_samples=n_samples)
    # black-box (Monte Carlo) curves are differentiated numerically only
    closed_form = moment_method not in ("mc", "monte-carlo")
    model = ParametricVarianceGaussianModel(
        lambda t: curve(t).mean,
        lambda t: curve(t).covariance.entries,
        mean_jacobian=sys.analytic_mean_jacobian if closed_form else None,
        var_jacobian=sys.analytic_covariance_jacobian if closed_form else None,
        param_dim=sys.param_dim,
        output_dim=sys.output_dim,
        name=f"gaussian[{sys.name}]",
        declare_score=False,
    )
    return EquivalentGaussianSystem(model, sys, str(moment_method))


def _gaussian_jacobians(model: ParametricVarianceGaussianModel, theta, scheme: str):
    t = theta_array(theta)
    jm = model.analytic_mean_jacobian(t)
    jc = model.analytic_covariance_jacobian(t)
    if jm is None or jc is None:
        curve = lambda th: moments_analytic(model, th)  # noqa: E731
        if jm is None:
            jm = jacobian_mean(curve, theta, scheme, check_consistency=False).entries
        if jc is None:
            jc = jacobian_covariance(curve, theta, scheme)
    return np.asarray(jm), np.asarray(jc)


def gaussian_fisher_full(
    model,
    theta,
    covariance_jacobian: Optional[np.ndarray] = None,
    scheme: str = "central-4",
) -> FisherMatrix:
    """Fisher information of a Gaussian model including its variance channel.

    F_jk = J_j^T Sigma^{-1} J_k + 1/2 tr(Sigma^{-1} dSigma_j Sigma^{-1} dSigma_k).
    The first term alone is the moment bound. Pass ``covariance_jacobian``
    to override dSigma (e.g. zeros).
    """
    if isinstance(model, EquivalentGaussianSystem):
        model = model.base
    t = theta_array(theta)
    _, sigma = model.analytic_moments(t)
    jm, jc = _gaussian_jacobians(model, theta, scheme)
    if covariance_jacobian is not None:
        jc = np.asarray(covariance_jacobian, dtype=float).reshape(jc.shape)
    mean_term = bound_multivariate(jm, sigma).entries
    return FisherMatrix(
        symmetrize(mean_term + variance_term(sigma, jc)), FisherSource.CLOSED_FORM
    )


def variance_term(sigma, covariance_jacobian) -> np.ndarray:
    """1/2 tr(Sigma^{-1} dSigma_j Sigma^{-1} dSigma_k): what the bound discards for a Gaussian."""
    sigma = symmetrize(_entries(sigma))
    jc = np.asarray(covariance_jacobian, dtype=float)
    factor = _factor_covariance(sigma, ridge=False)
    a = [linalg.cho_solve(factor, d) for d in jc]
    k = len(a)
    out = np.empty((k, k))
    for i in range(k):
        for j in range(k):
            out[i, j] = 0.5 * np.trace(a[i] @ a[j])
    return symmetrize(out)


def worst_case_additive_fisher(signal_jacobian, noise_covariance) -> FisherMatrix:
    """Fisher information of y = s(theta) + Gaussian noise with covariance R.

    Among zero-mean noises with covariance R this is the smallest attainable
    information, and it coincides with the moment bound.
    """
    return bound_multivariate(signal_jacobian, noise_covariance)
