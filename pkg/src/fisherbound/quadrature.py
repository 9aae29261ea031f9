"""Adaptive Gauss–Kronrod (G7/K15) quadrature for vector-valued integrands.

The integrand receives a 1-D array of abscissae and returns an array whose
leading axis matches it; every trailing component is integrated at once and
the panel error is the worst component error.  Multi-dimensional boxes are
handled by iterating the 1-D rule.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import QuadratureError

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Symmetric 15-point layout: negative nodes, then zero, then positive nodes.
NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[:-1][::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[:-1][::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[9, 11, 13]] = _WG[:3][::-1]


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-12
    max_panels: int = 4000
    n_sigma: float = 10.0  # truncation half-width for unbounded supports


@dataclass(frozen=True)
class Interval:
    lower: float
    upper: float
    breakpoints: tuple[float, ...] = field(default=())


def gk15_panel(f: Callable[[np.ndarray], np.ndarray], a: float, b: float):
    """Kronrod estimate and QUADPACK-style error estimate on one panel."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    values = np.asarray(f(center + half * NODES), dtype=float)
    wk = KRONROD_WEIGHTS.reshape((15,) + (1,) * (values.ndim - 1))
    wg = GAUSS_WEIGHTS.reshape(wk.shape)
    kronrod = half * np.sum(wk * values, axis=0)
    gauss = half * np.sum(wg * values, axis=0)
    mean = kronrod / (2 * half) if half else kronrod
    resasc = abs(half) * np.sum(wk * np.abs(values - mean), axis=0)
    diff = np.abs(kronrod - gauss)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = np.where(
            resasc > 0, resasc * np.minimum(1.0, (200.0 * diff / resasc) ** 1.5), diff
        )
    return kronrod, float(np.max(scaled, initial=0.0))


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    *,
    breakpoints: Sequence[float] = (),
    abs_tol: float = 1e-10,
    rel_tol: float = 1e-12,
    max_panels: int = 4000,
):
    """Integrate ``f`` over ``[a, b]`` by bisecting the worst panel.

    Returns ``(value, error_estimate)``. Raises QuadratureError when
    ``max_panels`` is exhausted before the tolerance is met.
    """
    edges = sorted({a, b, *(p for p in breakpoints if a < p < b)})
    heap = []
    total = None
    total_err = 0.0
    for counter, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
        val, err = gk15_panel(f, lo, hi)
        heapq.heappush(heap, (-err, counter, lo, hi, val))
        total = val if total is None else total + val
        total_err += err
    counter = len(heap)
    while True:
        target = max(abs_tol, rel_tol * float(np.max(np.abs(total), initial=0.0)))
        if total_err <= target:
            return total, total_err
        if len(heap) >= max_panels:
            raise QuadratureError("adaptive quadrature did not converge", total_err)
        neg_err, _, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        left, left_err = gk15_panel(f, lo, mid)
        right, right_err = gk15_panel(f, mid, hi)
        total = total - val + left + right
        # recompute the running error sum to avoid drift from cancellation
        heapq.heappush(heap, (-left_err, counter, lo, mid, left))
        heapq.heappush(heap, (-right_err, counter + 1, mid, hi, right))
        counter += 2
        total_err = -sum(item[0] for item in heap)


def integrate_box(
    f: Callable[[np.ndarray], np.ndarray],
    domain: Sequence[Interval],
    cfg: QuadratureConfig = QuadratureConfig(),
):
    """Iterated quadrature of ``f`` over a box.

    ``f`` maps an (m, N) array of points to an (m, ...) array.
    """
    dim = len(domain)
    first = domain[0]
    if dim == 1:
        return integrate(
            lambda x: f(x[:, None]),
            first.lower,
            first.upper,
            breakpoints=first.breakpoints,
            abs_tol=cfg.abs_tol,
            rel_tol=cfg.rel_tol,
            max_panels=cfg.max_panels,
        )

    width = first.upper - first.lower
    inner_cfg = QuadratureConfig(
        abs_tol=0.1 * cfg.abs_tol / max(width, 1.0),
        rel_tol=cfg.rel_tol,
        max_panels=cfg.max_panels,
        n_sigma=cfg.n_sigma,
    )
    inner_err = [0.0]

    def outer(xs: np.ndarray) -> np.ndarray:
        out = []
        for x in xs:
            def g(rest, x=x):
                head = np.full((rest.shape[0], 1), x)
                return f(np.hstack([head, rest]))

            val, err = integrate_box(g, domain[1:], inner_cfg)
            inner_err[0] = max(inner_err[0], err)
            out.append(val)
        return np.array(out)

    val, err = integrate(
        outer,
        first.lower,
        first.upper,
        breakpoints=first.breakpoints,
        abs_tol=cfg.abs_tol,
        rel_tol=cfg.rel_tol,
        max_panels=cfg.max_panels,
    )
    return val, err + inner_err[0] * width
