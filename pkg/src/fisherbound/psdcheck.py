"""Loewner-order checks and empirical versions of the two moment inequalities.

``A >= B`` in the PSD sense means x^T (A - B) x >= 0 for every x, i.e. the
smallest eigenvalue of the symmetrized difference is non-negative up to a
declared slack.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import linalg

from .core import (
    INVERTIBILITY_RTOL,
    PSD_SLACK,
    FisherBoundError,
    FisherMatrix,
    ShapeMismatchError,
    SingularMatrixError,
    symmetrize,
)
from .systems import make_rng


class SingularGramError(SingularMatrixError):
    """Empirical E[x x^T] is not invertible."""


class ZeroSecondMomentError(FisherBoundError):
    pass


@dataclass(frozen=True)
class OrderingVerdict:
    holds: bool
    min_eigenvalue: float
    tolerance_used: float

    def __post_init__(self):
        if self.holds != (self.min_eigenvalue >= -self.tolerance_used):
            raise ValueError("verdict inconsistent with its eigenvalue margin")


def _matrix(a) -> np.ndarray:
    if isinstance(a, FisherMatrix):
        return np.array(a.entries)
    return np.atleast_2d(np.asarray(a, dtype=float))


def psd_order(A, B, tol: Optional[float] = None) -> OrderingVerdict:
    """Decide A >= B from the smallest eigenvalue of sym(A - B).

    The default slack is 1e-10 * (1 + max(|tr A|, |tr B|)).
    """
    a, b = _matrix(A), _matrix(B)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ShapeMismatchError(f"cannot order matrices of shapes {a.shape} and {b.shape}")
    if tol is None:
        tol = PSD_SLACK * (1.0 + max(abs(np.trace(a)), abs(np.trace(b))))
    min_eig = float(np.linalg.eigvalsh(symmetrize(a - b))[0])
    return OrderingVerdict(bool(min_eig >= -tol), min_eig, float(tol))


def min_generalized_eigenvalue(bound, exact) -> float:
    """Smallest lambda with bound v = lambda exact v; 1.0 means the bound is tight.

    For scalars this is bound / exact. Requires ``exact`` positive definite.
    """
    b, e = symmetrize(_matrix(bound)), symmetrize(_matrix(exact))
    eig = np.linalg.eigvalsh(e)
    if eig[0] <= INVERTIBILITY_RTOL * max(eig[-1], 0.0) or eig[-1] <= 0:
        raise SingularMatrixError("exact Fisher matrix is singular", float(eig[0]))
    return float(linalg.eigh(b, e, eigvals_only=True)[0])


def _pairs(xy_samples, y=None):
    if y is None:
        x, y = xy_samples
    else:
        x = xy_samples
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if y.ndim == 1:
        y = y[:, None]
    if x.shape != y.shape:
        raise ShapeMismatchError(f"x and y samples differ in shape: {x.shape} vs {y.shape}")
    return x, y


def proposition_check(xy_samples, y=None):
    """Check E[yy^T] >= E[yx^T] E[xx^T]^{-1} E[xy^T] on raw (uncentred) sample moments.

    Accepts ``(x, y)`` as a pair or two arguments, each (n, N). Returns the
    verdict and the residual matrix. With one consistent set of empirical
    moments the residual is the empirical second moment of y - y_hat(x), so
    it is PSD up to rounding for every sample. The slack is
    1e-10 * (1 + tr E[yy^T]).
    """
    x, y = _pairs(xy_samples, y)
    n, dim = x.shape
    if n < 2 * dim + 2:
        raise ValueError(f"need at least {2 * dim + 2} samples, got {n}")
    exx = x.T @ x / n
    eyx = y.T @ x / n
    eyy = y.T @ y / n
    eig = np.linalg.eigvalsh(exx)
    if eig[0] <= INVERTIBILITY_RTOL * eig[-1]:
        raise SingularGramError("empirical E[x x^T] is singular", float(eig[0]))
    factor = linalg.cho_factor(exx, lower=True)
    residual = symmetrize(eyy - eyx @ linalg.cho_solve(factor, eyx.T))
    tol = PSD_SLACK * (1.0 + float(np.trace(eyy)))
    min_eig = float(np.linalg.eigvalsh(residual)[0])
    return OrderingVerdict(bool(min_eig >= -tol), min_eig, tol), residual


def corollary_check(xy_samples, y=None) -> float:
    """E[y^2] E[x^2] - E[xy]^2 for scalar samples (non-negative by Cauchy–Schwarz)."""
    x, y = _pairs(xy_samples, y)
    if x.shape[1] != 1:
        raise ShapeMismatchError("corollary_check takes scalar samples")
    x, y = x[:, 0], y[:, 0]
    if x.size < 4:
        raise ValueError("need at least 4 samples")
    ex2 = float(np.mean(x * x))
    if ex2 == 0.0:
        raise ZeroSecondMomentError("empirical E[x^2] is zero")
    ey2 = float(np.mean(y * y))
    exy = float(np.mean(x * y))
    return ey2 * ex2 - exy * exy


def _random_joint(rng: np.random.Generator, dim: int, n: int, coupling: str):
    mix = rng.standard_normal((dim, dim))
    x = rng.standard_normal((n, dim)) @ mix.T + rng.standard_normal(dim)
    if coupling == "identity":
        return x, x.copy()
    gain = rng.standard_normal((dim, dim))
    noise = rng.standard_normal((n, dim)) * rng.uniform(0.1, 2.0, dim)
    y = x @ gain.T + noise + rng.standard_normal(dim)
    return x, y


def appendix_suite(
    seed: int,
    trials: int,
    dims=(1, 2, 3, 5),
    n: int = 1000,
    coupling: str = "random",
) -> dict:
    """Run both inequalities on ``trials`` seeded random joints each.

    Proposition trials cycle through ``dims``; corollary trials use scalar
    joints. Returns a JSON-ready summary with the worst margins.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if coupling not in ("random", "identity"):
        raise ValueError(f"unknown coupling {coupling!r}")
    rng = make_rng(seed)
    prop_pass = 0
    worst_prop = np.inf
    worst_residual_norm = 0.0
    for i in range(trials):
        dim = dims[i % len(dims)]
        x, y = _random_joint(rng, dim, n, coupling)
        verdict, residual = proposition_check(x, y)
        prop_pass += verdict.holds
        worst_prop = min(worst_prop, verdict.min_eigenvalue / verdict.tolerance_used * PSD_SLACK)
        worst_residual_norm = max(worst_residual_norm, float(np.max(np.abs(residual))))
    cor_pass = 0
    worst_cor = np.inf
    for _ in range(trials):
        x, y = _random_joint(rng, 1, n, coupling)
        residual = corollary_check(x, y)
        scale = float(np.mean(x * x) * np.mean(y * y))
        rel = residual / scale
        cor_pass += rel >= -1e-12
        worst_cor = min(worst_cor, rel)
    return {
        "seed": int(seed),
        "trials": int(trials),
        "dims": list(dims),
        "samples_per_trial": int(n),
        "coupling": coupling,
        "proposition": {
            "passed": int(prop_pass),
            # min eigenvalue of the residual in units of (1 + tr E[yy^T])
            "worst_relative_margin": float(worst_prop),
            "max_abs_residual": worst_residual_norm,
        },
        "corollary": {
            "passed": int(cor_pass),
            # residual in units of E[x^2] E[y^2]
            "worst_relative_residual": float(worst_cor),
        },
        "all_passed": bool(prop_pass == trials and cor_pass == trials),
    }
