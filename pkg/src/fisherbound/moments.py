"""Output moment curves: mean and central covariance of y as functions of theta."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import (
    CovarianceMatrix,
    InsufficientSamplesError,
    NonFiniteError,
    SupportKind,
    UnsupportedSupportError,
    symmetrize,
)
from .quadrature import QuadratureConfig, integrate_box
from .systems import Capability, ParametricSystem, sample, theta_array

HEAVY_TAIL_KURTOSIS = 9.0
MAX_QUADRATURE_DIM = 3


class MomentMethod(str, enum.Enum):
    ANALYTIC = "analytic"
    ENUMERATION = "enumeration"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class MomentCurve:
    """Mean and covariance of the output at one parameter point.

    ``mc_stderr`` holds ``{"mean": (N,), "covariance": (N, N)}`` standard
    errors and is present exactly when the method is Monte Carlo. ``seed``
    records the random stream so that finite differences can verify common
    random numbers.
    """

    mean: np.ndarray
    covariance: CovarianceMatrix
    method: MomentMethod
    mc_stderr: Optional[dict] = None
    n_samples: Optional[int] = None
    seed: Optional[int] = None
    warnings: tuple[str, ...] = field(default=())
    samples: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        mean = np.atleast_1d(np.array(self.mean, dtype=float))
        if not np.all(np.isfinite(mean)):
            raise NonFiniteError("moment mean is not finite")
        mean.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        if not isinstance(self.covariance, CovarianceMatrix):
            object.__setattr__(self, "covariance", CovarianceMatrix(self.covariance))
        method = MomentMethod(self.method)
        object.__setattr__(self, "method", method)
        if (self.mc_stderr is not None) != (method is MomentMethod.MONTE_CARLO):
            raise ValueError("mc_stderr must be present exactly for Monte Carlo moments")

    @property
    def dim(self) -> int:
        return self.mean.size


def moments_analytic(sys: ParametricSystem, theta) -> MomentCurve:
    sys.require(Capability.ANALYTIC_MOMENTS)
    mean, cov = sys.analytic_moments(theta_array(theta))
    return MomentCurve(mean, symmetrize(cov), MomentMethod.ANALYTIC)


def moments_enumerate(sys: ParametricSystem, theta) -> MomentCurve:
    """Exact sums over the atoms of a finite discrete support."""
    if sys.support.kind is not SupportKind.DISCRETE:
        raise UnsupportedSupportError("enumeration needs a finite discrete support")
    atoms = sys.support.atoms
    p = sys.pmf(theta_array(theta))
    mean = p @ atoms
    centered = atoms - mean
    cov = (centered * p[:, None]).T @ centered
    return MomentCurve(mean, symmetrize(cov), MomentMethod.ENUMERATION)


def moments_quadrature(
    sys: ParametricSystem, theta, cfg: QuadratureConfig = QuadratureConfig()
) -> MomentCurve:
    """Mean and covariance by adaptive quadrature of the joint density.

    Integrals run over the system's truncation box (N <= 3). The covariance
    is taken about the integrated mean in a second pass.
    """
    sys.require(Capability.DENSITY)
    n = sys.output_dim
    if n > MAX_QUADRATURE_DIM or sys.support.kind is SupportKind.DISCRETE:
        raise UnsupportedSupportError(
            f"quadrature moments need a continuous support with N <= {MAX_QUADRATURE_DIM}"
        )
    t = theta_array(theta)
    domain = sys.integration_domain(t, cfg.n_sigma)

    def density(y):
        return np.exp(sys._log_density(y, t))

    def first_pass(y):
        p = density(y)
        return np.hstack([p[:, None], y * p[:, None]])

    first, _ = integrate_box(first_pass, domain, cfg)
    mass, mean = first[0], first[1:]
    iu = np.triu_indices(n)

    def second_pass(y):
        c = y - mean
        outer = c[:, :, None] * c[:, None, :]
        return outer[:, iu[0], iu[1]] * density(y)[:, None]

    upper, _ = integrate_box(second_pass, domain, cfg)
    cov = np.zeros((n, n))
    cov[iu] = upper
    cov = cov + np.triu(cov, 1).T
    warnings = ()
    if abs(mass - 1.0) > 1e3 * cfg.abs_tol:
        warnings = (f"density integrates to {mass:.12g} over the truncation box",)
    return MomentCurve(mean, symmetrize(cov), MomentMethod.QUADRATURE, warnings=warnings)


def moments_mc(samples, seed: Optional[int] = None, keep_samples: bool = False) -> MomentCurve:
    """Sample mean, unbiased covariance and their standard errors.

    Covariance standard errors use the normal-theory approximation
    Var(S_ij) ~ (S_ij**2 + S_ii * S_jj) / (n - 1). ``keep_samples`` attaches
    the sample matrix so that paired differences can be formed later.
    """
    y = np.asarray(samples, dtype=float)
    if y.ndim == 1:
        y = y[:, None]
    n, dim = y.shape
    if n < dim + 2:
        raise InsufficientSamplesError(f"need at least {dim + 2} samples, got {n}")
    if not np.all(np.isfinite(y)):
        raise NonFiniteError("samples contain non-finite values")
    mean = y.mean(axis=0)
    centered = y - mean
    cov = symmetrize(centered.T @ centered / (n - 1))
    diag = np.diag(cov)
    stderr = {
        "mean": np.sqrt(diag / n),
        "covariance": np.sqrt((cov**2 + np.outer(diag, diag)) / (n - 1)),
    }
    warnings = []
    with np.errstate(divide="ignore", invalid="ignore"):
        kurt = np.mean(centered**4, axis=0) / np.mean(centered**2, axis=0) ** 2
    if np.any(kurt > HEAVY_TAIL_KURTOSIS):
        warnings.append(
            f"heavy-tailed samples (kurtosis {float(np.nanmax(kurt)):.3g}); "
            "covariance standard errors are unreliable"
        )
    return MomentCurve(
        mean,
        cov,
        MomentMethod.MONTE_CARLO,
        mc_stderr=stderr,
        n_samples=n,
        seed=seed,
        warnings=tuple(warnings),
        samples=y if keep_samples else None,
    )


class MonteCarloMoments:
    """theta -> MomentCurve from ``n`` samples drawn with a fixed seed.

    Reusing the seed at every theta gives common random numbers.
    """

    def __init__(self, sys: ParametricSystem, seed: int, n: int):
        sys.require(Capability.SAMPLEABLE)
        self.sys = sys
        self.seed = int(seed)
        self.n = int(n)

    def default_step(self, theta_k: float) -> float:
        # balances O(h^2) bias against the O(1/(h n)) variance of CRN
        # differences for discrete outputs
        return self.n ** -0.2 * (1.0 + abs(theta_k))

    def __call__(self, theta) -> MomentCurve:
        return moments_mc(
            sample(self.sys, theta, self.seed, self.n), seed=self.seed, keep_samples=True
        )


def default_method(sys: ParametricSystem) -> MomentMethod:
    if sys.has(Capability.ANALYTIC_MOMENTS):
        return MomentMethod.ANALYTIC
    if sys.support.kind is SupportKind.DISCRETE:
        return MomentMethod.ENUMERATION
    if sys.has(Capability.DENSITY) and sys.output_dim <= MAX_QUADRATURE_DIM:
        return MomentMethod.QUADRATURE
    return MomentMethod.MONTE_CARLO


def moment_curve(
    sys: ParametricSystem,
    method: str | MomentMethod | None = None,
    *,
    cfg: QuadratureConfig = QuadratureConfig(),
    seed: Optional[int] = None,
    n_samples: int = 1_000_000,
) -> Callable[[object], MomentCurve]:
    """Evaluator theta -> MomentCurve for the chosen method ("auto" picks one)."""
    if method in (None, "auto"):
        method = default_method(sys)
    method = MomentMethod("monte-carlo" if method == "mc" else method)
    if method is MomentMethod.ANALYTIC:
        return lambda theta: moments_analytic(sys, theta)
    if method is MomentMethod.ENUMERATION:
        return lambda theta: moments_enumerate(sys, theta)
    if method is MomentMethod.QUADRATURE:
        return lambda theta: moments_quadrature(sys, theta, cfg)
    if seed is None:
        raise ValueError("Monte Carlo moments need a seed")
    return MonteCarloMoments(sys, seed, n_samples)
