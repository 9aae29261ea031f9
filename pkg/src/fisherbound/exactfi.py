"""Reference values of the exact Fisher information E[score score^T].

These are the oracles the moment bound is checked against: enumeration for
discrete outputs, quadrature for continuous outputs with N <= 2 and Monte
Carlo otherwise.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np
from scipy import special

from .core import (
    FisherMatrix,
    FisherSource,
    UnsupportedSupportError,
    SupportKind,
    symmetrize,
)
from .numdiff import default_step
from .quadrature import QuadratureConfig, integrate_box
from .systems import (
    SQRT2,
    Capability,
    ParametricSystem,
    sample,
    theta_array,
)

log = logging.getLogger(__name__)

ATOM_DROP = 1e-300
MAX_QUADRATURE_DIM = 2


def hardlimiter_exact_closed_form(theta: float, alpha: float) -> float:
    """(2/pi) exp(-(theta-alpha)**2) / (1 - erf(x)**2), x = (theta-alpha)/sqrt(2).

    With 1 - erf(x)**2 = erfc(x) erfc(-x) and erfc(|x|) = erfcx(|x|) exp(-x**2)
    this becomes (2/pi) exp(-x**2) / (erfcx(|x|) erfc(-|x|)), which stays
    accurate in the tails and underflows to zero instead of 0/0.
    """
    x = abs(theta - alpha) / SQRT2
    return 2.0 / math.pi * math.exp(-x * x) / (special.erfcx(x) * special.erfc(-x))


def _pmf_derivative(sys: ParametricSystem, t: np.ndarray) -> np.ndarray:
    jac = sys.pmf_jacobian(t)
    if jac is not None:
        return jac
    cols = []
    for k in range(t.size):
        h = default_step(t[k])
        up, down = t.copy(), t.copy()
        up[k] += h
        down[k] -= h
        cols.append((sys.pmf(up) - sys.pmf(down)) / (up[k] - down[k]))
    return np.column_stack(cols)


def exact_fi_discrete(sys: ParametricSystem, theta) -> FisherMatrix:
    """Sum over atoms of (dp)(dp)^T / p; atoms with p < 1e-300 are skipped."""
    if sys.support.kind is not SupportKind.DISCRETE:
        raise UnsupportedSupportError("enumeration needs a finite discrete support")
    t = theta_array(theta)
    p = sys.pmf(t)
    dp = _pmf_derivative(sys, t)
    keep = p > ATOM_DROP
    weighted = dp[keep] / p[keep, None]
    return FisherMatrix(symmetrize(weighted.T @ dp[keep]), FisherSource.EXACT_ENUMERATION)


def _fd_score(sys: ParametricSystem, y: np.ndarray, t: np.ndarray) -> np.ndarray:
    cols = []
    for k in range(t.size):
        h = default_step(t[k])
        up, down = t.copy(), t.copy()
        up[k] += h
        down[k] -= h
        cols.append((sys._log_density(y, up) - sys._log_density(y, down)) / (up[k] - down[k]))
    return np.column_stack(cols)


def _score_fn(sys: ParametricSystem):
    if sys.has(Capability.ANALYTIC_SCORE):
        return sys._score
    sys.require(Capability.DENSITY)
    return lambda y, t: _fd_score(sys, y, t)


def exact_fi_quadrature(
    sys: ParametricSystem, theta, cfg: QuadratureConfig = QuadratureConfig()
) -> FisherMatrix:
    """Adaptive quadrature of p(y) score(y) score(y)^T over the truncation box."""
    sys.require(Capability.DENSITY)
    n = sys.output_dim
    if n > MAX_QUADRATURE_DIM or sys.support.kind is SupportKind.DISCRETE:
        raise UnsupportedSupportError(
            f"quadrature Fisher information needs a continuous support with N <= {MAX_QUADRATURE_DIM}"
        )
    t = theta_array(theta)
    k = sys.param_dim
    score = _score_fn(sys)
    iu = np.triu_indices(k)

    def integrand(y):
        p = np.exp(sys._log_density(y, t))
        out = np.zeros((y.shape[0], iu[0].size))
        live = p > 0
        if np.any(live):
            s = score(y[live], t)
            out[live] = (s[:, iu[0]] * s[:, iu[1]]) * p[live, None]
        return out

    upper, _ = integrate_box(integrand, sys.integration_domain(t, cfg.n_sigma), cfg)
    fisher = np.zeros((k, k))
    fisher[iu] = upper
    fisher = fisher + np.triu(fisher, 1).T
    return FisherMatrix(fisher, FisherSource.EXACT_QUADRATURE)


def exact_fi_mc(sys: ParametricSystem, theta, seed: int, n: int) -> FisherMatrix:
    """Mean of score outer products over ``n`` seeded samples, with standard errors.

    Uses the analytic score when declared; otherwise falls back to a
    finite-difference score of the log-density (noisier) and logs a warning.
    """
    sys.require(Capability.SAMPLEABLE)
    if not sys.has(Capability.ANALYTIC_SCORE):
        log.warning("%s: no analytic score, using finite-difference score in Monte Carlo FI", sys.name)
    score = _score_fn(sys)
    t = theta_array(theta)
    y = sample(sys, t, seed, n)
    s = score(y, t)
    outer = s[:, :, None] * s[:, None, :]
    fisher = symmetrize(outer.mean(axis=0))
    stderr = outer.std(axis=0, ddof=1) / math.sqrt(n) if n > 1 else np.zeros_like(fisher)
    return FisherMatrix(fisher, FisherSource.MC_SCORE, stderr=symmetrize(stderr))


def exact_fi(
    sys: ParametricSystem,
    theta,
    method: str = "auto",
    cfg: QuadratureConfig = QuadratureConfig(),
    seed: Optional[int] = None,
    n_samples: int = 1_000_000,
) -> FisherMatrix:
    """Dispatch to one of the oracles; "auto" picks the cheapest exact one."""
    if method == "auto":
        if sys.support.kind is SupportKind.DISCRETE:
            method = "enumeration"
        elif sys.has(Capability.DENSITY) and sys.output_dim <= MAX_QUADRATURE_DIM:
            method = "quadrature"
        else:
            method = "mc"
    if method == "enumeration":
        return exact_fi_discrete(sys, theta)
    if method == "quadrature":
        return exact_fi_quadrature(sys, theta, cfg)
    if method in ("mc", "monte-carlo"):
        if seed is None:
            raise ValueError("Monte Carlo Fisher information needs a seed")
        return exact_fi_mc(sys, theta, seed, n_samples)
    raise ValueError(f"unknown exact method {method!r}")
