"""Shared value types, tolerances and exceptions."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional, Sequence

import numpy as np

# Numerical conventions. Tests refer to these by name.
SYMMETRY_RTOL = 1e-12
PSD_SLACK = 1e-10  # eigenvalues >= -PSD_SLACK * (1 + trace)
INVERTIBILITY_RTOL = 1e-12  # min eigenvalue > INVERTIBILITY_RTOL * max eigenvalue


class FisherBoundError(Exception):
    """Base class for all errors raised by this package."""


class CapabilityError(FisherBoundError):
    pass


class SupportError(FisherBoundError):
    """An output point lies outside the support of the system."""


class UnsupportedSupportError(FisherBoundError):
    """The requested method cannot handle this kind of support."""


class ShapeMismatchError(FisherBoundError):
    pass


class NonFiniteError(FisherBoundError):
    pass


class InsufficientSamplesError(FisherBoundError):
    pass


class ZeroVarianceError(FisherBoundError):
    pass


class SingularMatrixError(FisherBoundError):
    def __init__(self, message: str, min_eigenvalue: float):
        super().__init__(f"{message} (min eigenvalue {min_eigenvalue:.3e})")
        self.min_eigenvalue = min_eigenvalue


class SingularFisherError(SingularMatrixError):
    """Fisher matrix is not invertible: some parameter direction is unidentifiable."""


class SingularCovarianceError(SingularMatrixError):
    pass


class QuadratureError(FisherBoundError):
    def __init__(self, message: str, error_estimate: float):
        super().__init__(f"{message} (achieved error estimate {error_estimate:.3e})")
        self.error_estimate = error_estimate


class EvaluationError(FisherBoundError):
    pass


class CommonRandomNumbersError(FisherBoundError):
    """Monte Carlo probe points were not generated from a shared seed."""


def _frozen_array(values: Any, ndim: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != ndim:
        raise ShapeMismatchError(f"{name} must have {ndim} dimensions, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def _check_symmetric(arr: np.ndarray, name: str) -> None:
    if arr.shape[0] != arr.shape[1]:
        raise ShapeMismatchError(f"{name} must be square, got shape {arr.shape}")
    scale = max(1.0, float(np.max(np.abs(arr)))) if arr.size else 1.0
    if np.max(np.abs(arr - arr.T), initial=0.0) > SYMMETRY_RTOL * scale:
        raise FisherBoundError(f"{name} is not symmetric")


def psd_slack(matrix: np.ndarray) -> float:
    """Absolute eigenvalue slack used for PSD decisions on ``matrix``."""
    return PSD_SLACK * (1.0 + abs(float(np.trace(matrix))))


def symmetrize(matrix: np.ndarray) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=float)
    return 0.5 * (matrix + matrix.T)


@dataclass(frozen=True)
class ParameterPoint:
    values: np.ndarray
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        arr = np.atleast_1d(np.array(self.values, dtype=float))
        if arr.ndim != 1 or arr.size < 1:
            raise ShapeMismatchError("parameter point must be a non-empty vector")
        object.__setattr__(self, "values", _frozen_array(arr, 1, "parameter point"))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != arr.size:
                raise ShapeMismatchError("one label per parameter required")
            object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.values.size

    def shifted(self, k: int, delta: float) -> "ParameterPoint":
        values = self.values.copy()
        values[k] += delta
        return ParameterPoint(values, self.labels)

    def __eq__(self, other):
        if not isinstance(other, ParameterPoint):
            return NotImplemented
        return np.array_equal(self.values, other.values) and self.labels == other.labels

    def __hash__(self):
        return hash((self.values.tobytes(), self.labels))


def as_point(theta: Any) -> ParameterPoint:
    if isinstance(theta, ParameterPoint):
        return theta
    return ParameterPoint(theta)


class SupportKind(str, enum.Enum):
    DISCRETE = "finite-discrete"
    REAL = "real-line"
    HALF_LINE = "half-line"
    BOX = "box"


@dataclass(frozen=True)
class SupportDescriptor:
    """Output support.

    ``atoms`` is an (M, N) array for discrete supports. ``lower``/``upper``
    are per-dimension bounds for half-line and box supports.
    """

    kind: SupportKind
    dim: int
    atoms: Optional[np.ndarray] = None
    lower: Optional[np.ndarray] = None
    upper: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("support dimension must be >= 1")
        if self.kind is SupportKind.DISCRETE:
            if self.atoms is None:
                raise ValueError("discrete support needs atoms")
            atoms = np.array(self.atoms, dtype=float).reshape(-1, self.dim)
            if atoms.shape[0] == 0:
                raise ValueError("discrete support needs at least one atom")
            if np.unique(atoms, axis=0).shape[0] != atoms.shape[0]:
                raise ValueError("discrete support atoms must be distinct")
            atoms.setflags(write=False)
            object.__setattr__(self, "atoms", atoms)
        for name in ("lower", "upper"):
            bound = getattr(self, name)
            if bound is not None:
                bound = np.broadcast_to(np.array(bound, dtype=float), (self.dim,)).copy()
                bound.setflags(write=False)
                object.__setattr__(self, name, bound)

    @classmethod
    def discrete(cls, atoms: Sequence) -> "SupportDescriptor":
        atoms = np.array(atoms, dtype=float)
        dim = 1 if atoms.ndim == 1 else atoms.shape[1]
        return cls(SupportKind.DISCRETE, dim, atoms=atoms.reshape(-1, dim))

    @classmethod
    def real(cls, dim: int = 1) -> "SupportDescriptor":
        return cls(SupportKind.REAL, dim)

    def contains(self, y: np.ndarray) -> np.ndarray:
        """Boolean mask over the leading axes of ``y`` (shape (..., N))."""
        y = np.asarray(y, dtype=float)
        if y.shape[-1] != self.dim:
            raise ShapeMismatchError(f"output points must have trailing dimension {self.dim}")
        if self.kind is SupportKind.DISCRETE:
            return np.any(np.all(y[..., None, :] == self.atoms, axis=-1), axis=-1)
        mask = np.all(np.isfinite(y), axis=-1)
        if self.lower is not None:
            mask &= np.all(y >= self.lower, axis=-1)
        if self.upper is not None:
            mask &= np.all(y <= self.upper, axis=-1)
        return mask


@dataclass(frozen=True)
class CovarianceMatrix:
    entries: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(np.atleast_2d(self.entries), 2, "covariance")
        _check_symmetric(arr, "covariance")
        if arr.size and np.linalg.eigvalsh(arr).min() < -psd_slack(arr):
            raise FisherBoundError("covariance has a negative eigenvalue")
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def condition_number(self) -> float:
        eig = np.linalg.eigvalsh(self.entries)
        return float(eig.max() / eig.min()) if eig.min() > 0 else float("inf")


class FisherSource(str, enum.Enum):
    EXACT_ENUMERATION = "exact-enumeration"
    EXACT_QUADRATURE = "exact-quadrature"
    MC_SCORE = "mc-score"
    MOMENT_BOUND = "moment-bound"
    CLOSED_FORM = "closed-form"


@dataclass(frozen=True)
class FisherMatrix:
    entries: np.ndarray
    source: FisherSource
    stderr: Optional[np.ndarray] = None

    def __post_init__(self):
        arr = _frozen_array(np.atleast_2d(self.entries), 2, "Fisher matrix")
        _check_symmetric(arr, "Fisher matrix")
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "source", FisherSource(self.source))
        if self.stderr is not None:
            object.__setattr__(
                self, "stderr", _frozen_array(np.atleast_2d(self.stderr), 2, "stderr")
            )

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def scalar(self) -> float:
        if self.entries.shape != (1, 1):
            raise ShapeMismatchError("not a 1x1 Fisher matrix")
        return float(self.entries[0, 0])


def crlb_from_fisher(fisher: FisherMatrix | np.ndarray) -> np.ndarray:
    """Cramér–Rao bound matrix, the inverse of ``fisher``.

    Raises SingularFisherError when the smallest eigenvalue is not above
    ``INVERTIBILITY_RTOL`` times the largest.
    """
    entries = fisher.entries if isinstance(fisher, FisherMatrix) else np.atleast_2d(fisher)
    entries = symmetrize(entries)
    eig, vec = np.linalg.eigh(entries)
    if eig[-1] <= 0 or eig[0] <= INVERTIBILITY_RTOL * eig[-1]:
        raise SingularFisherError("Fisher matrix is singular", float(eig[0]))
    return symmetrize((vec / eig) @ vec.T)


@dataclass(frozen=True)
class BoundReport:
    """Bound, optional exact value and their comparison at one parameter point."""

    theta: ParameterPoint
    bound: FisherMatrix
    exact: Optional[FisherMatrix] = None
    crlb: Optional[np.ndarray] = None
    psd_verdict: Any = None  # psdcheck.OrderingVerdict
    ratio: Optional[float] = None
    diagnostics: Mapping[str, Any] = field(default_factory=dict)
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        if self.psd_verdict is not None and self.exact is None:
            raise ValueError("psd_verdict requires an exact Fisher matrix")
