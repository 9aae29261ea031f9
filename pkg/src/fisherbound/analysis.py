"""End-to-end evaluation of the bound (and optionally the exact value) at one theta."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .bounds import bound_multivariate, bound_stderr, variance_term
from .core import (
    BoundReport,
    CommonRandomNumbersError,
    FisherBoundError,
    InsufficientSamplesError,
    ParameterPoint,
    ShapeMismatchError,
    SingularFisherError,
    as_point,
    crlb_from_fisher,
)
from .exactfi import exact_fi
from .moments import MomentMethod, moment_curve, moments_mc
from .numdiff import (
    MeanJacobian,
    analytic_jacobian,
    fd_weights,
    moment_jacobians,
    stencil_indices,
)
from .psdcheck import min_generalized_eigenvalue, psd_order
from .quadrature import QuadratureConfig
from .systems import ParametricSystem, theta_array


def _compare(bound, exact, warnings):
    verdict = psd_order(exact, bound)
    try:
        ratio = min_generalized_eigenvalue(bound, exact)
    except FisherBoundError as exc:
        warnings.append(f"ratio undefined: {exc}")
        ratio = None
    return verdict, ratio


def _crlb(bound, warnings):
    try:
        return crlb_from_fisher(bound)
    except SingularFisherError as exc:
        warnings.append(f"no CRLB: {exc}")
        return None


def analyze(
    sys: ParametricSystem,
    theta,
    *,
    moments: str = "auto",
    exact: str = "none",
    jacobian: str = "auto",
    scheme: Optional[str] = None,
    step=None,
    seed: Optional[int] = None,
    n_samples: int = 1_000_000,
    cfg: QuadratureConfig = QuadratureConfig(),
    ridge: bool = False,
) -> BoundReport:
    """Moment bound at ``theta`` with diagnostics, compared to an exact oracle if requested.

    ``jacobian`` is "auto", "analytic" or "numeric". In auto mode the
    system's closed-form mean derivative is used unless the moments are
    Monte Carlo, in which case common-random-number differences are taken.
    """
    theta = as_point(theta)
    warnings: list[str] = []
    curve_eval = moment_curve(sys, moments, cfg=cfg, seed=seed, n_samples=n_samples)
    curve = curve_eval(theta)
    warnings.extend(curve.warnings)
    is_mc = curve.method is MomentMethod.MONTE_CARLO

    jac = None
    if jacobian == "analytic" or (jacobian == "auto" and not is_mc):
        jac = analytic_jacobian(sys, theta)
        if jac is None and jacobian == "analytic":
            raise FisherBoundError(f"{sys.name} has no closed-form mean derivative")
    scheme = scheme or ("central-2" if is_mc else "central-4")
    if jac is None:
        jac, cov_jac = moment_jacobians(
            curve_eval, theta, scheme, step, check_consistency=not is_mc
        )
    else:
        cov_jac = sys.analytic_covariance_jacobian(theta_array(theta))
        if cov_jac is None:
            _, cov_jac = moment_jacobians(curve_eval, theta, scheme, step, check_consistency=False)

    bound = bound_multivariate(jac, curve.covariance, ridge=ridge)
    diagnostics = {
        "mean": curve.mean,
        "covariance": curve.covariance.entries,
        "moment_method": curve.method.value,
        "jacobian": jac.entries,
        "jacobian_provenance": jac.provenance,
        "step_sizes": jac.step_sizes,
        "consistency": jac.consistency,
        "condition_number": curve.covariance.condition_number(),
        "covariance_jacobian": cov_jac,
        "variance_term": variance_term(curve.covariance.entries, cov_jac),
    }
    if is_mc:
        diagnostics["mc_stderr"] = {
            "mean": curve.mc_stderr["mean"],
            "covariance": curve.mc_stderr["covariance"],
            "jacobian": jac.stderr,
            "bound": bound_stderr(jac, jac.stderr, curve.covariance, curve.mc_stderr["covariance"]),
        }

    exact_fm = verdict = ratio = None
    if exact not in (None, "none"):
        exact_fm = exact_fi(sys, theta, exact, cfg=cfg, seed=seed, n_samples=n_samples)
        verdict, ratio = _compare(bound, exact_fm, warnings)
        if exact_fm.stderr is not None:
            diagnostics["exact_stderr"] = exact_fm.stderr
    return BoundReport(
        theta=theta,
        bound=bound,
        exact=exact_fm,
        crlb=_crlb(bound, warnings),
        psd_verdict=verdict,
        ratio=ratio,
        diagnostics=diagnostics,
        warnings=tuple(warnings),
    )


def estimate_from_samples(
    thetas: Sequence[float],
    sample_sets: Sequence[np.ndarray],
    seeds: Optional[Sequence[Optional[int]]] = None,
    ridge: bool = False,
) -> list[BoundReport]:
    """Bound at every theta from one sample matrix per theta (black-box mode).

    Means are differentiated across the theta grid with (possibly unequally
    spaced) three-point stencils. Samples are expected to share random
    numbers across theta; if seeds are given they must all agree. With equal
    sample counts the derivative error bars come from row-paired differences.
    """
    thetas = np.asarray(thetas, dtype=float)
    if thetas.ndim != 1 or thetas.size < 2:
        raise InsufficientSamplesError("need sample sets for at least two theta values")
    if len(sample_sets) != thetas.size:
        raise ShapeMismatchError("one sample set per theta required")
    if np.any(np.diff(thetas) <= 0):
        raise ValueError("theta values must be strictly increasing")
    sets = [np.asarray(s, dtype=float) for s in sample_sets]
    sets = [s[:, None] if s.ndim == 1 else s for s in sets]
    if len({s.shape[1] for s in sets}) != 1:
        raise ShapeMismatchError("sample sets have inconsistent column counts")

    common_warnings = []
    known = [] if seeds is None else [s for s in seeds if s is not None]
    if len(set(known)) > 1:
        raise CommonRandomNumbersError(f"sample sets were drawn with different seeds {sorted(set(known))}")
    if seeds is None or len(known) != thetas.size:
        common_warnings.append("seeds not recorded for every theta; common random numbers assumed")
    seed = known[0] if known else None
    curves = [moments_mc(s, seed=seed) for s in sets]
    paired = len({s.shape[0] for s in sets}) == 1
    if not paired:
        common_warnings.append("unequal sample counts: Jacobian errors assume independent sets")

    reports = []
    for i, t in enumerate(thetas):
        warnings = list(common_warnings) + list(curves[i].warnings)
        idx = stencil_indices(thetas.size, i)
        w = fd_weights(thetas[idx], t)
        jac = sum(wj * curves[j].mean for wj, j in zip(w, idx))[:, None]
        if paired:
            rows = sum(wj * sets[j] for wj, j in zip(w, idx))
            jac_se = (rows.std(axis=0, ddof=1) / np.sqrt(rows.shape[0]))[:, None]
        else:
            jac_se = np.sqrt(sum((wj * curves[j].mc_stderr["mean"]) ** 2 for wj, j in zip(w, idx)))[:, None]
        jacobian = MeanJacobian(jac, "central-difference", (float(np.diff(thetas[idx]).max()),), "grid-3", stderr=jac_se)
        cov = curves[i].covariance
        bound = bound_multivariate(jacobian, cov, ridge=ridge)
        stderr = {
            "mean": curves[i].mc_stderr["mean"],
            "covariance": curves[i].mc_stderr["covariance"],
            "jacobian": jac_se,
            "bound": bound_stderr(jacobian, jac_se, cov, curves[i].mc_stderr["covariance"]),
        }
        reports.append(
            BoundReport(
                theta=ParameterPoint([t]),
                bound=bound,
                crlb=_crlb(bound, warnings),
                diagnostics={
                    "mean": curves[i].mean,
                    "covariance": cov.entries,
                    "moment_method": MomentMethod.MONTE_CARLO.value,
                    "jacobian": jacobian.entries,
                    "jacobian_provenance": jacobian.provenance,
                    "stencil": thetas[idx].tolist(),
                    "condition_number": cov.condition_number(),
                    "mc_stderr": stderr,
                    "n_samples": curves[i].n_samples,
                },
                warnings=tuple(warnings),
            )
        )
    return reports
