"""Parametric probabilistic systems p(y; theta) and the model zoo.

Every model assumes the usual regularity conditions (differentiation under
the integral sign is allowed); these are documented per model and never
checked at runtime.

Random streams come from a Philox4x64-10 counter-based generator keyed
directly with the 64-bit seed (``numpy.random.Philox(key=seed)``). Samplers
draw their driving noise independently of ``theta``, so equal seeds at
neighbouring parameter values give common random numbers.
"""

from __future__ import annotations

import abc
import enum
import math
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import special

from .core import (
    CapabilityError,
    FisherBoundError,
    ParameterPoint,
    ShapeMismatchError,
    SupportDescriptor,
    SupportError,
    SupportKind,
    UnsupportedSupportError,
    as_point,
)
from .quadrature import Interval

SQRT2 = math.sqrt(2.0)
SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


class Capability(str, enum.Enum):
    DENSITY = "has-density"
    ANALYTIC_MOMENTS = "has-analytic-moments"
    ANALYTIC_SCORE = "has-analytic-score"
    SAMPLEABLE = "sampleable"


def make_rng(seed: int) -> np.random.Generator:
    """Generator for ``seed``: Philox4x64-10 keyed by the seed, counter at zero."""
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return np.random.Generator(np.random.Philox(key=seed))


class ParametricSystem(abc.ABC):
    """A model p(y; theta) with output dimension ``output_dim`` and ``param_dim`` parameters.

    Subclasses implement the hooks for the capabilities they declare. Output
    points are handled in batches of shape (m, N); parameters arrive as
    plain float arrays of shape (K,).
    """

    name = "system"
    support: SupportDescriptor
    param_dim: int
    capabilities: frozenset = frozenset()

    def __init__(self):
        if not {Capability.DENSITY, Capability.SAMPLEABLE} & set(self.capabilities):
            raise FisherBoundError("a system must have a density or be sampleable")

    @property
    def output_dim(self) -> int:
        return self.support.dim

    def has(self, capability: Capability) -> bool:
        return capability in self.capabilities

    def require(self, capability: Capability) -> None:
        if capability not in self.capabilities:
            raise CapabilityError(f"{self.name} lacks capability {capability.value!r}")

    # hooks --------------------------------------------------------------
    def _log_density(self, y: np.ndarray, theta: np.ndarray) -> np.ndarray:
        if self.support.kind is SupportKind.DISCRETE:
            idx = self._atom_index(y)
            with np.errstate(divide="ignore"):
                return np.log(self.pmf(theta))[idx]
        raise CapabilityError(f"{self.name} lacks capability 'has-density'")

    def _score(self, y: np.ndarray, theta: np.ndarray) -> np.ndarray:
        raise CapabilityError(f"{self.name} lacks capability 'has-analytic-score'")

    def _sample(self, theta: np.ndarray, rng: np.random.Generator, n: int) -> np.ndarray:
        raise CapabilityError(f"{self.name} lacks capability 'sampleable'")

    def analytic_moments(self, theta: np.ndarray):
        """(mean, covariance) as arrays of shape (N,) and (N, N)."""
        raise CapabilityError(f"{self.name} lacks capability 'has-analytic-moments'")

    def analytic_mean_jacobian(self, theta: np.ndarray) -> Optional[np.ndarray]:
        """(N, K) derivative of the mean, or None when not known in closed form."""
        return None

    def analytic_covariance_jacobian(self, theta: np.ndarray) -> Optional[np.ndarray]:
        """(K, N, N) derivatives of the covariance, or None."""
        return None

    def pmf(self, theta: np.ndarray) -> np.ndarray:
        """Probabilities of ``support.atoms`` (discrete supports only)."""
        raise UnsupportedSupportError(f"{self.name} has no probability mass function")

    def pmf_jacobian(self, theta: np.ndarray) -> Optional[np.ndarray]:
        """(M, K) derivative of the pmf, or None."""
        return None

    def kinks(self, theta: np.ndarray) -> list[tuple[float, ...]]:
        """Per output dimension, locations where the density is not smooth."""
        return [() for _ in range(self.output_dim)]

    def integration_domain(self, theta: np.ndarray, n_sigma: float = 10.0) -> list[Interval]:
        """Box used to truncate density integrals, with kink breakpoints."""
        support = self.support
        if support.kind is SupportKind.BOX:
            lower, upper = support.lower, support.upper
        else:
            mean, cov = self.analytic_moments(theta)
            half = n_sigma * self.effective_scale(theta, np.sqrt(np.diag(cov)))
            lower, upper = mean - half, mean + half
            if support.lower is not None:
                lower = np.maximum(lower, support.lower)
            if support.upper is not None:
                upper = np.minimum(upper, support.upper)
        return [
            Interval(float(lo), float(hi), tuple(k))
            for lo, hi, k in zip(lower, upper, self.kinks(theta))
        ]

    def effective_scale(self, theta: np.ndarray, stddev: np.ndarray) -> np.ndarray:
        """Width unit for truncation; heavier tails override this."""
        return stddev

    def _atom_index(self, y: np.ndarray) -> np.ndarray:
        match = np.all(y[:, None, :] == self.support.atoms[None, :, :], axis=-1)
        return np.argmax(match, axis=1)


def _as_batch(y, dim: int):
    arr = np.asarray(y, dtype=float)
    if arr.ndim == 0:
        if dim != 1:
            raise ShapeMismatchError(f"expected output points of dimension {dim}")
        return arr.reshape(1, 1), True
    if arr.ndim == 1:
        if dim == 1 and arr.size != 1:
            return arr.reshape(-1, 1), False
        if arr.size != dim:
            raise ShapeMismatchError(f"expected output points of dimension {dim}")
        return arr.reshape(1, dim), True
    if arr.shape[-1] != dim:
        raise ShapeMismatchError(f"expected output points of dimension {dim}")
    return arr.reshape(-1, dim), False


def _theta_vector(sys: ParametricSystem, theta) -> np.ndarray:
    values = as_point(theta).values
    if values.size != sys.param_dim:
        raise ShapeMismatchError(f"{sys.name} expects {sys.param_dim} parameters")
    return np.array(values)


def log_density(sys: ParametricSystem, y, theta):
    """log p(y; theta); a float for a single point, an array for a batch.

    Zero-probability points inside the support give ``-inf``.
    """
    sys.require(Capability.DENSITY)
    batch, single = _as_batch(y, sys.output_dim)
    if not np.all(sys.support.contains(batch)):
        raise SupportError(f"output point outside the support of {sys.name}")
    out = sys._log_density(batch, _theta_vector(sys, theta))
    return float(out[0]) if single else out


def analytic_score(sys: ParametricSystem, y, theta):
    """Gradient of log p(y; theta) in theta: shape (K,) or (m, K)."""
    sys.require(Capability.ANALYTIC_SCORE)
    batch, single = _as_batch(y, sys.output_dim)
    if not np.all(sys.support.contains(batch)):
        raise SupportError(f"output point outside the support of {sys.name}")
    out = sys._score(batch, _theta_vector(sys, theta))
    return out[0] if single else out


def sample(sys: ParametricSystem, theta, seed: int, n: int) -> np.ndarray:
    """``n`` output points of shape (n, N), deterministic in (seed, n, theta)."""
    sys.require(Capability.SAMPLEABLE)
    if n < 1:
        raise ValueError("n must be >= 1")
    return sys._sample(_theta_vector(sys, theta), make_rng(seed), int(n))


# --------------------------------------------------------------------------
# hard limiter


def hardlimiter_pmf(theta: float, alpha: float) -> tuple[float, float]:
    """(P(y=+1), P(y=-1)) for y = sign_alpha(theta + eta), eta ~ N(0, 1)."""
    p_plus = 0.5 * float(special.erfc(-(theta - alpha) / SQRT2))
    return p_plus, 1.0 - p_plus


class HardLimiterModel(ParametricSystem):
    """y = +1 if theta + eta >= alpha else -1, with eta standard normal.

    The pmf is smooth in theta, so the regularity conditions hold.
    """

    name = "hardlimiter"
    param_dim = 1
    capabilities = frozenset(Capability)

    def __init__(self, alpha: float = 0.0):
        self.alpha = float(alpha)
        self.support = SupportDescriptor.discrete([1.0, -1.0])
        super().__init__()

    def _x(self, theta) -> float:
        return (float(theta[0]) - self.alpha) / SQRT2

    def pmf(self, theta):
        return np.array(hardlimiter_pmf(float(theta[0]), self.alpha))

    def pmf_jacobian(self, theta):
        x = self._x(theta)
        slope = math.exp(-x * x) / math.sqrt(2.0 * math.pi)
        return np.array([[slope], [-slope]])

    def _score(self, y, theta):
        # phi(d)/P(+1) = sqrt(2/pi)/erfcx(-x), phi(d)/P(-1) = sqrt(2/pi)/erfcx(x)
        x = self._x(theta)
        plus = SQRT_2_OVER_PI / special.erfcx(-x)
        minus = -SQRT_2_OVER_PI / special.erfcx(x)
        return np.where(y[:, :1] > 0, plus, minus)

    def _sample(self, theta, rng, n):
        eta = rng.standard_normal(n)
        return np.where(theta[0] + eta >= self.alpha, 1.0, -1.0)[:, None]

    def analytic_moments(self, theta):
        x = self._x(theta)
        mean = special.erf(x)
        var = special.erfc(x) * special.erfc(-x)
        return np.array([mean]), np.array([[var]])

    def analytic_mean_jacobian(self, theta):
        x = self._x(theta)
        return np.array([[SQRT_2_OVER_PI * math.exp(-x * x)]])

    def analytic_covariance_jacobian(self, theta):
        x = self._x(theta)
        return np.array([[[-2.0 * special.erf(x) * SQRT_2_OVER_PI * math.exp(-x * x)]]])


class FiniteDiscreteModel(ParametricSystem):
    """Generic model on a finite atom set with a user pmf.

    Sampling inverts the cumulative pmf on a uniform draw, so equal seeds
    give common random numbers.
    """

    name = "finite-discrete"

    def __init__(
        self,
        atoms: Sequence,
        pmf_fn: Callable[[np.ndarray], np.ndarray],
        pmf_jacobian_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        param_dim: int = 1,
    ):
        self.support = SupportDescriptor.discrete(atoms)
        self.param_dim = param_dim
        self._pmf_fn = pmf_fn
        self._pmf_jac_fn = pmf_jacobian_fn
        caps = {Capability.DENSITY, Capability.SAMPLEABLE}
        if pmf_jacobian_fn is not None:
            caps.add(Capability.ANALYTIC_SCORE)
        self.capabilities = frozenset(caps)
        super().__init__()

    def pmf(self, theta):
        return np.asarray(self._pmf_fn(np.asarray(theta)), dtype=float)

    def pmf_jacobian(self, theta):
        if self._pmf_jac_fn is None:
            return None
        jac = np.asarray(self._pmf_jac_fn(np.asarray(theta)), dtype=float)
        return jac.reshape(self.support.atoms.shape[0], self.param_dim)

    def _score(self, y, theta):
        idx = self._atom_index(y)
        p = self.pmf(theta)
        return self.pmf_jacobian(theta)[idx] / p[idx, None]

    def _sample(self, theta, rng, n):
        u = rng.random(n)
        cdf = np.cumsum(self.pmf(theta))
        idx = np.minimum(np.searchsorted(cdf, u, side="right"), cdf.size - 1)
        return self.support.atoms[idx]


# --------------------------------------------------------------------------
# additive noise models y = s(theta) + eta


class GaussianNoise:
    """Zero-mean Gaussian noise with covariance R."""

    kind = "gaussian"
    has_density = has_score = True

    def __init__(self, covariance):
        cov = np.atleast_2d(np.array(covariance, dtype=float))
        if cov.shape[0] != cov.shape[1] or not np.allclose(cov, cov.T, rtol=0, atol=1e-12):
            raise ValueError("noise covariance must be symmetric")
        self.covariance = cov
        self.chol = np.linalg.cholesky(cov)
        self.precision = np.linalg.inv(cov)
        self._log_norm = -cov.shape[0] * LOG_SQRT_2PI - np.log(np.diag(self.chol)).sum()

    @property
    def dim(self) -> int:
        return self.covariance.shape[0]

    def log_pdf(self, e):
        z = np.linalg.solve(self.chol, e.T)
        return self._log_norm - 0.5 * np.sum(z * z, axis=0)

    def grad_log_pdf(self, e):
        return -e @ self.precision

    def draw(self, rng, n):
        return rng.standard_normal((n, self.dim)) @ self.chol.T

    def effective_scale(self, stddev):
        return stddev

    def kinks(self, center):
        return [() for _ in range(self.dim)]


class LaplaceNoise:
    """Independent zero-mean Laplace components with scales ``b``.

    The density has a kink at zero; the score is defined almost everywhere
    and the regularity conditions hold.
    """

    kind = "laplace"
    has_density = has_score = True

    def __init__(self, scale):
        self.scale = np.atleast_1d(np.array(scale, dtype=float))
        if np.any(self.scale <= 0):
            raise ValueError("Laplace scales must be positive")
        self.covariance = np.diag(2.0 * self.scale**2)

    @property
    def dim(self) -> int:
        return self.scale.size

    def log_pdf(self, e):
        return np.sum(-np.log(2.0 * self.scale) - np.abs(e) / self.scale, axis=-1)

    def grad_log_pdf(self, e):
        return -np.sign(e) / self.scale

    def draw(self, rng, n):
        return rng.laplace(0.0, 1.0, size=(n, self.dim)) * self.scale

    def effective_scale(self, stddev):
        # Exponential tails: 10 standard deviations leave ~1e-4 of y^2 mass
        # outside the box, so widen to 40 scale units.
        return 4.0 * self.scale

    def kinks(self, center):
        return [(float(c),) for c in center]


class CustomNoise:
    """User-supplied zero-mean noise.

    ``draw(rng, n)`` must return an (n, N) array. ``log_pdf`` and
    ``grad_log_pdf`` are optional and enable the density and analytic score.
    """

    kind = "custom"

    def __init__(
        self,
        draw: Callable[[np.random.Generator, int], np.ndarray],
        covariance,
        log_pdf: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        grad_log_pdf: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        scale=None,
    ):
        self.covariance = np.atleast_2d(np.array(covariance, dtype=float))
        self._draw = draw
        self._log_pdf = log_pdf
        self._grad = grad_log_pdf
        self._scale = None if scale is None else np.atleast_1d(np.array(scale, dtype=float))
        self.has_density = log_pdf is not None
        self.has_score = log_pdf is not None and grad_log_pdf is not None

    @property
    def dim(self) -> int:
        return self.covariance.shape[0]

    def draw(self, rng, n):
        return np.asarray(self._draw(rng, n), dtype=float).reshape(n, self.dim)

    def log_pdf(self, e):
        return np.asarray(self._log_pdf(e), dtype=float)

    def grad_log_pdf(self, e):
        return np.asarray(self._grad(e), dtype=float)

    def effective_scale(self, stddev):
        return stddev if self._scale is None else self._scale

    def kinks(self, center):
        return [() for _ in range(self.dim)]


class AdditiveLocationModel(ParametricSystem):
    """y = s(theta) + eta with theta-independent zero-mean noise."""

    name = "additive-location"

    def __init__(
        self,
        signal: Callable[[np.ndarray], np.ndarray],
        noise,
        signal_jacobian: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        param_dim: int = 1,
        name: Optional[str] = None,
    ):
        self.signal = signal
        self.signal_jacobian = signal_jacobian
        self.noise = noise
        self.param_dim = param_dim
        if name:
            self.name = name
        self.support = SupportDescriptor.real(noise.dim)
        caps = {Capability.SAMPLEABLE, Capability.ANALYTIC_MOMENTS}
        if noise.has_density:
            caps.add(Capability.DENSITY)
        if noise.has_score and signal_jacobian is not None:
            caps.add(Capability.ANALYTIC_SCORE)
        self.capabilities = frozenset(caps)
        super().__init__()

    def _s(self, theta):
        return np.atleast_1d(np.asarray(self.signal(theta), dtype=float))

    def _ds(self, theta):
        jac = np.asarray(self.signal_jacobian(theta), dtype=float)
        return jac.reshape(self.output_dim, self.param_dim)

    def _log_density(self, y, theta):
        return self.noise.log_pdf(y - self._s(theta))

    def _score(self, y, theta):
        # d/dtheta log p_eta(y - s(theta)) = -J_s^T grad log p_eta
        return -self.noise.grad_log_pdf(y - self._s(theta)) @ self._ds(theta)

    def _sample(self, theta, rng, n):
        return self._s(theta) + self.noise.draw(rng, n)

    def analytic_moments(self, theta):
        return self._s(theta), self.noise.covariance.copy()

    def analytic_mean_jacobian(self, theta):
        return None if self.signal_jacobian is None else self._ds(theta)

    def analytic_covariance_jacobian(self, theta):
        n = self.output_dim
        return np.zeros((self.param_dim, n, n))

    def effective_scale(self, theta, stddev):
        return self.noise.effective_scale(stddev)

    def kinks(self, theta):
        return self.noise.kinks(self._s(theta))


def gaussian_location(variance: float = 1.0) -> AdditiveLocationModel:
    """y = theta + eta, eta ~ N(0, variance)."""
    return AdditiveLocationModel(
        lambda t: t[:1], GaussianNoise([[variance]]), lambda t: np.ones((1, 1)),
        name="gaussian-location",
    )


def laplace_location(b: float = 1.0) -> AdditiveLocationModel:
    """y = theta + eta, eta ~ Laplace(0, b)."""
    return AdditiveLocationModel(
        lambda t: t[:1], LaplaceNoise([b]), lambda t: np.ones((1, 1)),
        name="laplace-location",
    )


def linear_gaussian(A, R=None) -> AdditiveLocationModel:
    """y = A theta + eta, eta ~ N(0, R)."""
    A = np.atleast_2d(np.array(A, dtype=float))
    R = np.eye(A.shape[0]) if R is None else R
    return AdditiveLocationModel(
        lambda t: A @ t, GaussianNoise(R), lambda t: A, param_dim=A.shape[1],
        name="linear-gaussian",
    )


# --------------------------------------------------------------------------
# Gaussian with parameter-dependent mean and covariance


class ParametricVarianceGaussianModel(ParametricSystem):
    """y ~ N(mean_fn(theta), var_fn(theta)).

    ``var_fn`` returns a positive scalar (N = 1) or an (N, N) positive
    definite matrix. Jacobian callables are optional; without them the
    analytic score is unavailable and derivatives are taken numerically.
    """

    name = "parametric-variance-gaussian"

    def __init__(
        self,
        mean_fn: Callable[[np.ndarray], np.ndarray],
        var_fn: Callable[[np.ndarray], np.ndarray],
        mean_jacobian: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        var_jacobian: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        param_dim: int = 1,
        output_dim: int = 1,
        name: Optional[str] = None,
        declare_score: bool = True,
    ):
        self.mean_fn = mean_fn
        self.var_fn = var_fn
        self.mean_jacobian = mean_jacobian
        self.var_jacobian = var_jacobian
        self.param_dim = param_dim
        if name:
            self.name = name
        self.support = SupportDescriptor.real(output_dim)
        caps = {Capability.DENSITY, Capability.SAMPLEABLE, Capability.ANALYTIC_MOMENTS}
        if declare_score and mean_jacobian is not None and var_jacobian is not None:
            caps.add(Capability.ANALYTIC_SCORE)
        self.capabilities = frozenset(caps)
        super().__init__()

    def _mean(self, theta):
        return np.atleast_1d(np.asarray(self.mean_fn(theta), dtype=float)).reshape(self.output_dim)

    def _cov(self, theta):
        n = self.output_dim
        return np.asarray(self.var_fn(theta), dtype=float).reshape(n, n)

    def _log_density(self, y, theta):
        cov = self._cov(theta)
        chol = np.linalg.cholesky(cov)
        z = np.linalg.solve(chol, (y - self._mean(theta)).T)
        return (
            -self.output_dim * LOG_SQRT_2PI
            - np.log(np.diag(chol)).sum()
            - 0.5 * np.sum(z * z, axis=0)
        )

    def _score(self, y, theta):
        cov = self._cov(theta)
        prec = np.linalg.inv(cov)
        e = y - self._mean(theta)
        w = e @ prec  # (m, N)
        jm = self.analytic_mean_jacobian(theta)
        jc = self.analytic_covariance_jacobian(theta)
        out = w @ jm
        for k in range(self.param_dim):
            quad = np.einsum("mi,ij,mj->m", w, jc[k], w)
            out[:, k] += 0.5 * quad - 0.5 * np.trace(prec @ jc[k])
        return out

    def _sample(self, theta, rng, n):
        z = rng.standard_normal((n, self.output_dim))
        return self._mean(theta) + z @ np.linalg.cholesky(self._cov(theta)).T

    def analytic_moments(self, theta):
        return self._mean(theta), self._cov(theta)

    def analytic_mean_jacobian(self, theta):
        jac = None if self.mean_jacobian is None else self.mean_jacobian(theta)
        if jac is None:
            return None
        return np.asarray(jac, dtype=float).reshape(self.output_dim, self.param_dim)

    def analytic_covariance_jacobian(self, theta):
        jac = None if self.var_jacobian is None else self.var_jacobian(theta)
        if jac is None:
            return None
        n = self.output_dim
        jac = np.asarray(jac, dtype=float)
        # accept (K,) for scalar variance, (N, N, K) or (K, N, N)
        if n == 1:
            return jac.reshape(self.param_dim, 1, 1)
        if jac.shape == (n, n, self.param_dim):
            return np.moveaxis(jac, -1, 0)
        return jac.reshape(self.param_dim, n, n)


def exp_variance_gaussian(slope: float = 1.0) -> ParametricVarianceGaussianModel:
    """mean = slope * theta, variance = exp(theta)."""
    return ParametricVarianceGaussianModel(
        lambda t: slope * t[:1],
        lambda t: np.exp(t[:1]),
        lambda t: np.array([[slope]]),
        lambda t: np.exp(t[:1]),
        name="exp-variance-gaussian",
    )


def scale_gaussian(mean: float = 0.0) -> ParametricVarianceGaussianModel:
    """Constant mean, variance = theta**2 (theta != 0)."""
    return ParametricVarianceGaussianModel(
        lambda t: np.array([mean]),
        lambda t: t[:1] ** 2,
        lambda t: np.zeros((1, 1)),
        lambda t: 2.0 * t[:1],
        name="scale-gaussian",
    )


# --------------------------------------------------------------------------


class Reparameterized(ParametricSystem):
    """The base system seen through theta = scale * phi."""

    def __init__(self, base: ParametricSystem, scale: float):
        if scale == 0:
            raise ValueError("scale must be non-zero")
        self.base = base
        self.scale = float(scale)
        self.name = f"{base.name}*{scale:g}"
        self.support = base.support
        self.param_dim = base.param_dim
        self.capabilities = base.capabilities
        super().__init__()

    def _t(self, phi):
        return self.scale * np.asarray(phi, dtype=float)

    def _log_density(self, y, phi):
        return self.base._log_density(y, self._t(phi))

    def _score(self, y, phi):
        return self.scale * self.base._score(y, self._t(phi))

    def _sample(self, phi, rng, n):
        return self.base._sample(self._t(phi), rng, n)

    def analytic_moments(self, phi):
        return self.base.analytic_moments(self._t(phi))

    def analytic_mean_jacobian(self, phi):
        jac = self.base.analytic_mean_jacobian(self._t(phi))
        return None if jac is None else self.scale * jac

    def analytic_covariance_jacobian(self, phi):
        jac = self.base.analytic_covariance_jacobian(self._t(phi))
        return None if jac is None else self.scale * jac

    def pmf(self, phi):
        return self.base.pmf(self._t(phi))

    def pmf_jacobian(self, phi):
        jac = self.base.pmf_jacobian(self._t(phi))
        return None if jac is None else self.scale * jac

    def kinks(self, phi):
        return self.base.kinks(self._t(phi))

    def integration_domain(self, phi, n_sigma=10.0):
        return self.base.integration_domain(self._t(phi), n_sigma)


def theta_array(theta) -> np.ndarray:
    return np.array(as_point(theta).values)


__all__ = [
    "AdditiveLocationModel",
    "Capability",
    "CustomNoise",
    "FiniteDiscreteModel",
    "GaussianNoise",
    "HardLimiterModel",
    "LaplaceNoise",
    "ParameterPoint",
    "ParametricSystem",
    "ParametricVarianceGaussianModel",
    "Reparameterized",
    "analytic_score",
    "exp_variance_gaussian",
    "gaussian_location",
    "hardlimiter_pmf",
    "laplace_location",
    "linear_gaussian",
    "log_density",
    "make_rng",
    "sample",
    "scale_gaussian",
]
