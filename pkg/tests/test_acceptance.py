"""Acceptance criteria. Each test prints one PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v -s`` or
``python tests/test_acceptance.py``.
"""

import math
import time

import mpmath as mp
import numpy as np
import pytest

from fisherbound import cli
from fisherbound.analysis import analyze, estimate_from_samples
from fisherbound.bounds import bound_univariate, gaussian_fisher_full
from fisherbound.exactfi import exact_fi, hardlimiter_exact_closed_form
from fisherbound.moments import moment_curve, moments_enumerate
from fisherbound.numdiff import analytic_jacobian, gradient_check, jacobian_mean
from fisherbound.psdcheck import appendix_suite, psd_order
from fisherbound.systems import (
    HardLimiterModel,
    exp_variance_gaussian,
    gaussian_location,
    laplace_location,
    linear_gaussian,
    sample,
)

from conftest import mp_fisher


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail, elapsed, budget=None):
        timing = f"{elapsed:.2f}s" + ("" if budget is None else f" (budget {budget:g}s)")
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail}; {timing}")
        assert ok, detail

    return emit


def test_criterion_1_hardlimiter_tightness(report):
    start = time.perf_counter()
    alpha = 0.0
    hl = HardLimiterModel(alpha)
    worst = 0.0
    for d in np.linspace(-3, 3, 61):
        c = moments_enumerate(hl, d)
        dmu = analytic_jacobian(hl, d).entries[0, 0]
        bound = bound_univariate(dmu, c.covariance.entries[0, 0]).scalar()
        exact = hardlimiter_exact_closed_form(d, alpha)
        worst = max(worst, abs(bound - exact) / exact)
    at_alpha = bound_univariate(analytic_jacobian(hl, 0.0).entries[0, 0], moments_enumerate(hl, 0.0).covariance.entries[0, 0]).scalar()
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and abs(at_alpha - 2 / math.pi) <= 1e-15 and elapsed < 1.0
    report(1, "hard-limiter tightness", ok, f"max rel err {worst:.2e}, F(alpha)={at_alpha:.6f}", elapsed, 1)


ZOO = [
    ("hardlimiter", HardLimiterModel(0.0), "enumeration", np.linspace(-3, 3, 21)),
    ("gaussian-location", gaussian_location(1.0), "quadrature", np.linspace(-3, 3, 21)),
    ("laplace-location", laplace_location(1.0), "quadrature", np.linspace(-3, 3, 21)),
    ("parametric-variance-gaussian", exp_variance_gaussian(), "quadrature", np.linspace(-2, 2, 21)),
    ("linear-gaussian-2d", linear_gaussian([[1, 2], [3, 4]]), "quadrature", np.linspace(-2, 2, 20)),
]


def test_criterion_2_sandwich(report):
    start = time.perf_counter()
    worst = math.inf
    failures = []
    count = 0
    for name, model, method, grid in ZOO:
        for t in grid:
            theta = [t] * model.param_dim
            r = analyze(model, theta, exact=method)
            e = r.exact.entries
            margin = psd_order(e, r.bound, tol=0.0).min_eigenvalue / max(np.trace(e), 1e-300)
            worst = min(worst, margin)
            count += 1
            if margin < -1e-8:
                failures.append(f"{name} at {t:g}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 30.0
    detail = f"{count} points, worst margin/trace {worst:.2e}" + (f", failing {failures}" if failures else "")
    report(2, "sandwich exact >= bound", ok, detail, elapsed, 30)


def test_criterion_3_linear_gaussian_worst_case(report):
    start = time.perf_counter()
    model = linear_gaussian([[1, 2], [3, 4]], np.eye(2))
    r = analyze(model, [0.3, -0.4], exact="quadrature")
    target = np.array([[10.0, 14.0], [14.0, 20.0]])
    err = max(np.abs(r.bound.entries - target).max(), np.abs(r.exact.entries - target).max())
    elapsed = time.perf_counter() - start
    report(3, "linear-Gaussian exact = bound = A^T A", err <= 1e-8, f"max entry err {err:.2e}", elapsed)


def test_criterion_4_laplace_looseness(report):
    start = time.perf_counter()
    r = analyze(laplace_location(1.0), 0.0, exact="quadrature")
    exact, bound = r.exact.scalar(), r.bound.scalar()
    elapsed = time.perf_counter() - start
    ok = abs(exact - 1.0) <= 1e-6 and abs(bound - 0.5) <= 1e-6 and abs(r.ratio - 0.5) <= 1e-4
    report(4, "Laplace strict looseness", ok, f"exact {exact:.9f}, bound {bound:.9f}, ratio {r.ratio:.6f}", elapsed)


def test_criterion_5_variance_channel_loss(report):
    start = time.perf_counter()
    model = exp_variance_gaussian()
    full = gaussian_fisher_full(model, 0.0).scalar()
    bound = analyze(model, 0.0).bound.scalar()
    elapsed = time.perf_counter() - start
    ok = abs(full - 1.5) <= 1e-8 and abs(bound - 1.0) <= 1e-8
    report(5, "variance-channel loss", ok, f"full Gaussian FI {full:.12f}, bound {bound:.12f}", elapsed)


def _estimate_once(tmp_path, seed):
    thetas = [-0.1, 0.0, 0.1]
    hl = HardLimiterModel(0.0)
    sections = []
    for i, t in enumerate(thetas):
        path = tmp_path / f"hl_{i}.csv"
        cli.write_samples_csv(str(path), sample(hl, t, seed, 10**6))
        sections.append(f"[samples]\ntheta = {t}\nfile = {path}\nseed = {seed}\n")
    conf = tmp_path / "estimate.conf"
    conf.write_text("".join(sections))
    out = tmp_path / "report.json"
    code = cli.main(["estimate", "--config", str(conf), "--out", str(out)])
    return code, out.read_bytes()


def test_criterion_6_black_box_pipeline(report, tmp_path):
    import json

    start = time.perf_counter()
    code, first = _estimate_once(tmp_path, 20260101)
    elapsed = time.perf_counter() - start
    # identical config and seeds: regenerate everything and compare bytes
    _, second = _estimate_once(tmp_path, 20260101)
    bound = json.loads(first)["reports"][1]["bound"][0][0]
    err = abs(bound - 2 / math.pi)
    ok = code == 0 and err <= 0.02 and first == second and elapsed < 10.0
    detail = f"bound at 0 = {bound:.4f} (|err| {err:.4f}), byte-identical {first == second}"
    report(6, "black-box CRN estimate", ok, detail, elapsed, 10)


def test_criterion_7_appendix_suite(report):
    start = time.perf_counter()
    summary = appendix_suite(42, 100, dims=(1, 2, 3, 5))
    elapsed = time.perf_counter() - start
    ok = (
        summary["all_passed"]
        and summary["proposition"]["worst_relative_margin"] >= -1e-10
        and summary["corollary"]["worst_relative_residual"] >= -1e-12
        and elapsed < 5.0
    )
    detail = (
        f"proposition {summary['proposition']['passed']}/100 (worst {summary['proposition']['worst_relative_margin']:.2e}), "
        f"corollary {summary['corollary']['passed']}/100 (worst {summary['corollary']['worst_relative_residual']:.2e})"
    )
    report(7, "appendix inequalities", ok, detail, elapsed, 5)


def test_criterion_8_numerics_hygiene(report):
    start = time.perf_counter()
    hl = HardLimiterModel(0.0)
    curve = moment_curve(hl, "enumeration")
    worst_jac = 0.0
    for scheme in ("central-2", "central-4"):
        for d in np.linspace(-3, 3, 61):
            check = gradient_check(analytic_jacobian(hl, d), jacobian_mean(curve, d, scheme, check_consistency=False), 1e-6)
            worst_jac = max(worst_jac, check.max_abs_error)
    worst_rel = 0.0
    for d in np.linspace(-6, 6, 121):
        ref = mp_fisher(d)
        worst_rel = max(worst_rel, float(abs(hardlimiter_exact_closed_form(d, 0.0) - ref) / ref))
    elapsed = time.perf_counter() - start
    ok = worst_jac <= 1e-6 and worst_rel <= 1e-6
    report(8, "numerics hygiene", ok, f"max Jacobian err {worst_jac:.2e}, max closed-form rel err {worst_rel:.2e}", elapsed)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", "-s"]))
