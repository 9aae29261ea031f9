"""Finite-difference derivatives of moment curves with respect to theta."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .core import (
    CommonRandomNumbersError,
    EvaluationError,
    ParameterPoint,
    ShapeMismatchError,
    as_point,
)
from .moments import MomentCurve, MomentMethod
from .systems import ParametricSystem, theta_array

EPS = np.finfo(float).eps

# offsets (in units of h) and weights for the first derivative
STENCILS = {
    "central-2": ((-1.0, 1.0), (-0.5, 0.5)),
    "central-4": ((-2.0, -1.0, 1.0, 2.0), (1 / 12, -8 / 12, 8 / 12, -1 / 12)),
}


def default_step(theta_k: float, scheme: str = "central-2") -> float:
    root = 3.0 if scheme == "central-2" else 5.0
    return EPS ** (1.0 / root) * (1.0 + abs(theta_k))


@dataclass(frozen=True)
class MeanJacobian:
    entries: np.ndarray  # (N, K)
    provenance: str  # "analytic" or "central-difference"
    step_sizes: Optional[tuple[float, ...]] = None
    scheme: Optional[str] = None
    # max relative change of the estimate when all steps are halved
    consistency: Optional[float] = None
    stderr: Optional[np.ndarray] = None  # Monte Carlo standard errors, (N, K)

    def __post_init__(self):
        arr = np.atleast_2d(np.array(self.entries, dtype=float))
        if not np.all(np.isfinite(arr)):
            raise EvaluationError("Jacobian has non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        if self.provenance not in ("analytic", "central-difference"):
            raise ValueError(f"unknown provenance {self.provenance!r}")


def analytic_jacobian(sys: ParametricSystem, theta) -> Optional[MeanJacobian]:
    jac = sys.analytic_mean_jacobian(theta_array(theta))
    return None if jac is None else MeanJacobian(jac, "analytic")


def _evaluate(curve_eval, theta: ParameterPoint) -> MomentCurve:
    try:
        return curve_eval(theta)
    except Exception as exc:
        raise EvaluationError(f"moment evaluation failed at theta={theta.values.tolist()}: {exc}") from exc


def _check_crn(curves: Sequence[MomentCurve]) -> None:
    mc = [c for c in curves if c.method is MomentMethod.MONTE_CARLO]
    if not mc:
        return
    seeds = {c.seed for c in mc}
    if len(mc) != len(curves) or None in seeds or len(seeds) != 1:
        raise CommonRandomNumbersError(
            "finite differences of Monte Carlo moments require one shared seed at all probe points"
        )


class _Prober:
    """Evaluates a moment curve on a stencil and differentiates mean and covariance."""

    def __init__(self, curve_eval, theta, scheme, step):
        if scheme not in STENCILS:
            raise ValueError(f"unknown scheme {scheme!r}")
        self.curve_eval = curve_eval
        self.theta = as_point(theta)
        self.scheme = scheme
        k = self.theta.dim
        if step is None:
            custom = getattr(curve_eval, "default_step", None)
            steps = [
                custom(t) if custom else default_step(t, scheme) for t in self.theta.values
            ]
        else:
            steps = np.broadcast_to(np.asarray(step, dtype=float), (k,)).tolist()
        self.steps = tuple(float(h) for h in steps)
        self._cache = {}

    def curves(self, k, h):
        offsets, _ = STENCILS[self.scheme]
        out = []
        for off in offsets:
            key = (k, off * h)
            if key not in self._cache:
                self._cache[key] = _evaluate(self.curve_eval, self.theta.shifted(k, off * h))
            out.append(self._cache[key])
        _check_crn(out)
        return out

    def _actual_step(self, k, h):
        # the step actually realised in floating point
        t = self.theta.values[k]
        return (t + h) - t

    def derivative(self, k, h, extract):
        _, weights = STENCILS[self.scheme]
        values = [extract(c) for c in self.curves(k, h)]
        return sum(w * v for w, v in zip(weights, values)) / self._actual_step(k, h)

    def derivative_stderr(self, k, h):
        """Standard error from row-paired samples; None without stored samples."""
        curves = self.curves(k, h)
        samples = [c.samples for c in curves]
        if any(s is None for s in samples) or len({s.shape for s in samples}) != 1:
            return None
        _, weights = STENCILS[self.scheme]
        rows = sum(w * s for w, s in zip(weights, samples)) / self._actual_step(k, h)
        return rows.std(axis=0, ddof=1) / np.sqrt(rows.shape[0])

    def mean_jacobian(self, halving=True) -> MeanJacobian:
        cols = [self.derivative(k, h, lambda c: c.mean) for k, h in enumerate(self.steps)]
        entries = np.column_stack(cols)
        errs = [self.derivative_stderr(k, h) for k, h in enumerate(self.steps)]
        stderr = None if any(e is None for e in errs) else np.column_stack(errs)
        consistency = None
        if halving:
            half = np.column_stack(
                [self.derivative(k, h / 2, lambda c: c.mean) for k, h in enumerate(self.steps)]
            )
            scale = max(float(np.max(np.abs(half))), np.finfo(float).tiny)
            consistency = float(np.max(np.abs(entries - half))) / scale
        return MeanJacobian(
            entries, "central-difference", self.steps, self.scheme, consistency, stderr
        )

    def covariance_jacobian(self) -> np.ndarray:
        return np.stack(
            [
                self.derivative(k, h, lambda c: c.covariance.entries)
                for k, h in enumerate(self.steps)
            ]
        )


def jacobian_mean(
    curve_eval: Callable[[ParameterPoint], MomentCurve],
    theta,
    scheme: str = "central-2",
    step=None,
    check_consistency: bool = True,
) -> MeanJacobian:
    """(N, K) finite-difference derivative of the mean curve at ``theta``.

    Monte Carlo curves must carry one shared seed across all probe points.
    A step-halving consistency ratio is recorded to help spot kinks.
    """
    return _Prober(curve_eval, theta, scheme, step).mean_jacobian(check_consistency)


def jacobian_covariance(
    curve_eval: Callable[[ParameterPoint], MomentCurve],
    theta,
    scheme: str = "central-2",
    step=None,
) -> np.ndarray:
    """(K, N, N) finite-difference derivatives of the covariance curve."""
    return _Prober(curve_eval, theta, scheme, step).covariance_jacobian()


def moment_jacobians(curve_eval, theta, scheme="central-2", step=None, check_consistency=True):
    """Mean and covariance Jacobians sharing one set of probe evaluations."""
    prober = _Prober(curve_eval, theta, scheme, step)
    return prober.mean_jacobian(check_consistency), prober.covariance_jacobian()


def fd_weights(nodes: Sequence[float], x0: float, order: int = 1) -> np.ndarray:
    """Weights w with sum(w * f(nodes)) ~ f^(order)(x0) for arbitrary spacing."""
    nodes = np.asarray(nodes, dtype=float)
    m = nodes.size
    if m <= order:
        raise ValueError("need more nodes than the derivative order")
    if np.unique(nodes).size != m:
        raise ValueError("nodes must be distinct")
    d = nodes - x0
    vander = np.vander(d, m, increasing=True).T  # row j: d**j
    rhs = np.zeros(m)
    rhs[order] = float(np.prod(np.arange(1, order + 1)))
    return np.linalg.solve(vander, rhs)


def stencil_indices(n_points: int, i: int, width: int = 3) -> np.ndarray:
    """Indices of the ``width`` grid points nearest to point ``i`` (centred when possible)."""
    width = min(width, n_points)
    start = min(max(i - width // 2, 0), n_points - width)
    return np.arange(start, start + width)


@dataclass(frozen=True)
class GradientCheck:
    abs_error: np.ndarray
    rel_error: np.ndarray
    max_abs_error: float
    max_rel_error: float
    tol: float
    passed: bool


def gradient_check(analytic: MeanJacobian, numeric: MeanJacobian, tol: float) -> GradientCheck:
    """Compare two Jacobians; an entry passes if |a - n| <= tol * max(1, |a|)."""
    a, n = analytic.entries, numeric.entries
    if a.shape != n.shape:
        raise ShapeMismatchError(f"Jacobian shapes differ: {a.shape} vs {n.shape}")
    abs_err = np.abs(a - n)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel_err = np.where(a != 0, abs_err / np.abs(a), np.where(abs_err == 0, 0.0, np.inf))
    passed = bool(np.all(abs_err <= tol * np.maximum(1.0, np.abs(a))))
    return GradientCheck(
        abs_err, rel_err, float(abs_err.max()), float(rel_err.max()), tol, passed
    )
