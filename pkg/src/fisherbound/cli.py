"""Command-line front end: ``fisherbound {bound,compare,estimate,appendix-check,list-models}``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np

from . import systems
from .analysis import analyze, estimate_from_samples
from .core import BoundReport, FisherBoundError
from .psdcheck import appendix_suite

SCHEMA_VERSION = 1
EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


class ConfigError(Exception):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# --------------------------------------------------------------------------
# model zoo


def _matrix_param(text: str) -> np.ndarray:
    """Parse "1,2;3,4" into a 2x2 array."""
    rows = [[float(v) for v in row.split(",")] for row in str(text).split(";") if row.strip()]
    return np.array(rows, dtype=float)


def _variance_gaussian(mean_slope: float, variance: str):
    if variance == "exp":
        return systems.exp_variance_gaussian(mean_slope)
    if variance == "square":
        return systems.ParametricVarianceGaussianModel(
            lambda t: mean_slope * t[:1],
            lambda t: t[:1] ** 2,
            lambda t: np.array([[mean_slope]]),
            lambda t: 2.0 * t[:1],
            name="square-variance-gaussian",
        )
    raise ValueError("variance must be 'exp' or 'square'")


@dataclass(frozen=True)
class ZooEntry:
    factory: Callable[..., systems.ParametricSystem]
    params: dict
    description: str


ZOO = {
    "hardlimiter": ZooEntry(
        lambda alpha: systems.HardLimiterModel(float(alpha)),
        {"alpha": 0.0},
        "y = +1 if theta + eta >= alpha else -1, eta ~ N(0, 1)",
    ),
    "gaussian-location": ZooEntry(
        lambda variance: systems.gaussian_location(float(variance)),
        {"variance": 1.0},
        "y = theta + eta, eta ~ N(0, variance)",
    ),
    "laplace-location": ZooEntry(
        lambda b: systems.laplace_location(float(b)),
        {"b": 1.0},
        "y = theta + eta, eta ~ Laplace(0, b)",
    ),
    "parametric-variance-gaussian": ZooEntry(
        lambda mean_slope, variance: _variance_gaussian(float(mean_slope), str(variance)),
        {"mean_slope": 1.0, "variance": "exp"},
        "y ~ N(mean_slope * theta, v(theta)), v = exp(theta) or theta**2",
    ),
    "linear-gaussian": ZooEntry(
        lambda A, R: systems.linear_gaussian(
            _matrix_param(A), None if R in (None, "", "I") else _matrix_param(R)
        ),
        {"A": "1,2;3,4", "R": "I"},
        "y = A theta + eta, eta ~ N(0, R); matrices as 'a,b;c,d'",
    ),
}


def build_model(name: str, params: dict) -> systems.ParametricSystem:
    if name not in ZOO:
        raise ConfigError("model", f"unknown model {name!r}; see list-models")
    entry = ZOO[name]
    unknown = set(params) - set(entry.params)
    if unknown:
        raise ConfigError(f"param.{sorted(unknown)[0]}", f"not a parameter of {name}")
    merged = {**entry.params, **params}
    try:
        return entry.factory(**merged)
    except (ValueError, TypeError, np.linalg.LinAlgError) as exc:
        raise ConfigError("param", str(exc)) from exc


# --------------------------------------------------------------------------
# configuration


@dataclass
class SampleFile:
    theta: float
    path: str
    seed: Optional[int] = None


@dataclass
class RunConfig:
    model: Optional[str] = None
    params: dict = field(default_factory=dict)
    grid: list = field(default_factory=list)  # list of theta vectors
    moments: str = "auto"
    exact: str = "none"
    jacobian: str = "auto"
    seed: Optional[int] = None
    samples: int = 1_000_000
    sample_files: list = field(default_factory=list)
    out: Optional[str] = None
    format: str = "json"
    ridge: bool = False

    def echo(self) -> dict:
        data = asdict(self)
        data.pop("out")
        return data


def parse_config_text(text: str) -> tuple[dict, list[dict]]:
    """Flat ``key = value`` lines plus repeated ``[samples]`` sections."""
    flat: dict = {}
    sections: list[dict] = []
    current = flat
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name != "samples":
                raise ConfigError(f"line {lineno}", f"unknown section [{name}]")
            current = {}
            sections.append(current)
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", "expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        current[key] = value
    return flat, sections


def parse_grid(text: str) -> list[float]:
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError("grid", "expected a:b:n")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError("grid", str(exc)) from exc
    if n < 1:
        raise ConfigError("grid", "n must be >= 1")
    return np.linspace(a, b, n).tolist()


def parse_theta_list(text: str) -> list[list[float]]:
    """"0,0.5,1" gives three scalar points; "1,2;3,4" gives two 2-vectors."""
    try:
        if ";" in text:
            return [[float(v) for v in p.split(",")] for p in text.split(";") if p.strip()]
        return [[float(v)] for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError("theta", str(exc)) from exc


def _parse_seed(value, path="seed") -> int:
    try:
        seed = int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(path, f"not an integer: {value!r}") from exc
    if not 0 <= seed < 2**64:
        raise ConfigError(path, "must be an unsigned 64-bit integer")
    return seed


_SCALAR_KEYS = {"model", "grid", "theta", "moments", "exact", "jacobian", "seed", "samples", "out", "format", "ridge", "samples_dir"}


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    params: dict = {}
    sections: list[dict] = []
    if getattr(args, "config", None):
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError("config", str(exc)) from exc
        flat, sections = parse_config_text(text)
        for key, value in flat.items():
            if key in _SCALAR_KEYS:
                values[key] = value
            elif key.startswith("param."):
                params[key[6:]] = value
            else:
                params[key] = value
    # command-line flags win over the file
    for key in _SCALAR_KEYS:
        flag = getattr(args, key.replace("-", "_"), None)
        if flag is not None:
            values[key] = flag
    for item in getattr(args, "param", None) or []:
        if "=" not in item:
            raise ConfigError("param", f"expected KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        params[key.strip()] = value.strip()

    cfg = RunConfig()
    cfg.model = values.get("model")
    cfg.params = params
    if "theta" in values:
        cfg.grid = parse_theta_list(str(values["theta"]))
    elif "grid" in values:
        cfg.grid = [[v] for v in parse_grid(values["grid"])]
    for key in ("moments", "exact", "jacobian", "format"):
        if key in values:
            setattr(cfg, key, str(values[key]))
    if values.get("seed") is not None:
        cfg.seed = _parse_seed(values["seed"])
    if values.get("samples") is not None:
        try:
            cfg.samples = int(values["samples"])
        except ValueError as exc:
            raise ConfigError("samples", str(exc)) from exc
        if cfg.samples < 1:
            raise ConfigError("samples", "must be >= 1")
    cfg.out = values.get("out")
    cfg.ridge = str(values.get("ridge", "false")).lower() in ("1", "true", "yes")

    for i, section in enumerate(sections):
        path = f"samples[{i}]"
        if "theta" not in section or "file" not in section:
            raise ConfigError(path, "needs 'theta' and 'file'")
        seed = _parse_seed(section["seed"], f"{path}.seed") if "seed" in section else None
        cfg.sample_files.append(SampleFile(float(section["theta"]), section["file"], seed))
    samples_dir = values.get("samples_dir")
    if samples_dir:
        cfg.sample_files.extend(_files_from_dir(samples_dir, values.get("theta"), cfg.seed))
    return cfg


def _files_from_dir(directory: str, theta_text, seed) -> list[SampleFile]:
    files = sorted(Path(directory).glob("*.csv"))
    if theta_text is None:
        raise ConfigError("theta", "--samples-dir needs --theta with one value per CSV file")
    thetas = [t[0] for t in parse_theta_list(str(theta_text))]
    if len(thetas) != len(files):
        raise ConfigError("theta", f"{len(thetas)} theta values for {len(files)} CSV files in {directory}")
    return [SampleFile(t, str(f), seed) for t, f in zip(thetas, files)]


def validate(cfg: RunConfig, command: str) -> None:
    if command in ("bound", "compare"):
        if cfg.model is None:
            raise ConfigError("model", "required")
        if not cfg.grid:
            raise ConfigError("grid", "empty parameter grid")
        if cfg.moments not in ("auto", "analytic", "enumeration", "quadrature", "mc"):
            raise ConfigError("moments", f"unknown method {cfg.moments!r}")
        if cfg.exact not in ("none", "enumeration", "quadrature", "mc"):
            raise ConfigError("exact", f"unknown method {cfg.exact!r}")
        if cfg.jacobian not in ("auto", "analytic", "numeric"):
            raise ConfigError("jacobian", f"unknown mode {cfg.jacobian!r}")
        if command == "compare" and cfg.exact == "none":
            raise ConfigError("exact", "compare needs an exact method")
        if "mc" in (cfg.moments, cfg.exact) and cfg.seed is None:
            raise ConfigError("seed", "Monte Carlo methods need --seed")
    if command == "estimate":
        if len(cfg.sample_files) < 2:
            raise ConfigError("samples", "estimate needs sample files for at least two theta values")
        for i, sf in enumerate(cfg.sample_files):
            if not Path(sf.path).is_file():
                raise ConfigError(f"samples[{i}].file", f"no such file {sf.path}")
        thetas = [sf.theta for sf in cfg.sample_files]
        if any(b <= a for a, b in zip(thetas, thetas[1:])):
            raise ConfigError("samples", "theta values must be strictly increasing")
    if cfg.format not in ("json", "csv"):
        raise ConfigError("format", f"unknown format {cfg.format!r}")


# --------------------------------------------------------------------------
# I/O


def read_samples_csv(path: str) -> np.ndarray:
    """Comma-separated samples, one row per sample; an optional header row is skipped."""
    with open(path) as fh:
        first = fh.readline()
    try:
        [float(v) for v in first.strip().split(",")]
        skip = 0
    except ValueError:
        skip = 1
    return np.loadtxt(path, delimiter=",", skiprows=skip, ndmin=2, dtype=float)


def write_samples_csv(path: str, samples: np.ndarray) -> None:
    arr = np.asarray(samples, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    rows = arr.astype(np.int64).tolist() if np.all(arr == np.round(arr)) else arr.tolist()
    if arr.shape[1] == 1:
        body = "\n".join(map(str, (r[0] for r in rows)))
    else:
        body = "\n".join(",".join(map(str, r)) for r in rows)
    Path(path).write_text(body + "\n")


def _clean(value, path: str, warnings: list):
    """JSON-safe copy: arrays to lists, non-finite floats to null with a warning."""
    if value is None:
        return None
    if isinstance(value, dict):
        return {k: _clean(v, f"{path}.{k}", warnings) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (list, tuple)):
        return [_clean(v, path, warnings) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            warnings.append(f"{path} is not finite ({value})")
            return None
        return float(value)
    return value


def report_to_dict(report: BoundReport) -> dict:
    warnings = list(report.warnings)
    diag = report.diagnostics
    out = {
        "theta": report.theta.values,
        "mean": diag.get("mean"),
        "covariance": diag.get("covariance"),
        "jacobian": diag.get("jacobian"),
        "bound": report.bound.entries,
        "exact": None if report.exact is None else report.exact.entries,
        "crlb": report.crlb,
        "ratio": report.ratio,
        "psd_margin": None if report.psd_verdict is None else report.psd_verdict.min_eigenvalue,
        "psd_holds": None if report.psd_verdict is None else report.psd_verdict.holds,
        "stderr": diag.get("mc_stderr"),
        "diagnostics": {
            "moment_method": diag.get("moment_method"),
            "jacobian_provenance": diag.get("jacobian_provenance"),
            "condition_number": diag.get("condition_number"),
            "consistency": diag.get("consistency"),
            "variance_term": diag.get("variance_term"),
            "exact_stderr": diag.get("exact_stderr"),
        },
    }
    cleaned = {k: _clean(v, k, warnings) for k, v in out.items()}
    cleaned["warnings"] = warnings
    return cleaned


def render_json(cfg: RunConfig, reports: list[BoundReport], command: str) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config_echo": _clean(cfg.echo(), "config", []),
        "reports": [report_to_dict(r) for r in reports],
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


CSV_COLUMNS = ["theta", "mean", "variance", "jacobian", "bound", "exact", "crlb", "ratio", "psd_margin", "bound_stderr"]


def render_csv(reports: list[BoundReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        d = report_to_dict(r)
        if len(d["theta"]) != 1 or len(d["mean"]) != 1:
            raise ConfigError("format", "CSV output is univariate only; use json")
        stderr = d["stderr"] or {}
        row = [
            d["theta"][0],
            d["mean"][0],
            d["covariance"][0][0],
            d["jacobian"][0][0],
            d["bound"][0][0],
            None if d["exact"] is None else d["exact"][0][0],
            None if d["crlb"] is None else d["crlb"][0][0],
            d["ratio"],
            d["psd_margin"],
            stderr["bound"][0][0] if stderr.get("bound") else None,
        ]
        writer.writerow(["" if v is None else repr(float(v)) for v in row])
    return buf.getvalue()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# commands


def _workers(n_tasks: int) -> int:
    cap = os.environ.get("FISHERBOUND_THREADS")
    limit = int(cap) if cap else (os.cpu_count() or 1)
    return max(1, min(limit, n_tasks))


def run_grid(cfg: RunConfig) -> list[BoundReport]:
    model = build_model(cfg.model, cfg.params)
    for i, point in enumerate(cfg.grid):
        if len(point) != model.param_dim:
            if len(point) == 1:
                cfg.grid[i] = point * model.param_dim
            else:
                raise ConfigError("theta", f"{model.name} expects {model.param_dim} parameters")

    def one(point):
        try:
            return analyze(
                model,
                point,
                moments=cfg.moments,
                exact=cfg.exact,
                jacobian=cfg.jacobian,
                seed=cfg.seed,
                n_samples=cfg.samples,
                ridge=cfg.ridge,
            )
        except FisherBoundError as exc:
            raise FisherBoundError(f"theta={point}: {exc}") from exc

    with ThreadPoolExecutor(max_workers=_workers(len(cfg.grid))) as pool:
        return list(pool.map(one, cfg.grid))


def cmd_bound(cfg: RunConfig) -> list[BoundReport]:
    validate(cfg, "bound")
    return run_grid(cfg)


def cmd_compare(cfg: RunConfig) -> list[BoundReport]:
    validate(cfg, "compare")
    return run_grid(cfg)


def cmd_estimate(cfg: RunConfig) -> list[BoundReport]:
    validate(cfg, "estimate")
    sets = []
    for sf in cfg.sample_files:
        sets.append(read_samples_csv(sf.path))
    if len({s.shape[1] for s in sets}) != 1:
        raise ConfigError("samples", "CSV files have inconsistent column counts")
    thetas = [sf.theta for sf in cfg.sample_files]
    seeds = [sf.seed for sf in cfg.sample_files]
    return estimate_from_samples(thetas, sets, seeds, ridge=cfg.ridge)


def cmd_appendix_check(seed: int, trials: int, dims, n: int, coupling: str) -> dict:
    return appendix_suite(seed, trials, dims, n, coupling)


def cmd_list_models() -> str:
    lines = []
    for name, entry in ZOO.items():
        params = ", ".join(f"{k}={v}" for k, v in entry.params.items())
        lines.append(f"{name:30s} {entry.description}\n{'':30s} params: {params}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fisherbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=["json", "csv"])
        p.add_argument("--seed", help="unsigned 64-bit seed")
        p.add_argument("--ridge", action="store_const", const="true", help="regularize empirical covariances")

    for name in ("bound", "compare"):
        p = sub.add_parser(name, help="moment bound on a parameter grid" if name == "bound" else "bound vs exact Fisher information")
        common(p)
        p.add_argument("--model")
        p.add_argument("--param", action="append", metavar="KEY=VALUE")
        p.add_argument("--grid", metavar="a:b:n")
        p.add_argument("--theta", help="explicit points: '0,0.5' or '1,2;3,4'")
        p.add_argument("--moments", choices=["auto", "analytic", "enumeration", "quadrature", "mc"])
        p.add_argument("--exact", choices=["none", "enumeration", "quadrature", "mc"])
        p.add_argument("--jacobian", choices=["auto", "analytic", "numeric"])
        p.add_argument("--samples", type=int, help="Monte Carlo sample count")

    p = sub.add_parser("estimate", help="bound from per-theta sample CSV files")
    common(p)
    p.add_argument("--samples-dir", dest="samples_dir", help="directory of CSV files, matched to --theta in name order")
    p.add_argument("--theta")

    p = sub.add_parser("appendix-check", help="empirical checks of the two moment inequalities")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dims", default="1,2,3,5")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--coupling", choices=["random", "identity"], default="random")
    p.add_argument("--out")

    sub.add_parser("list-models", help="show the model zoo")
    return parser


def _join_negative_values(argv: list[str]) -> list[str]:
    # let "--grid -3:3:61" through; argparse would read "-3:3:61" as a flag
    out = []
    it = iter(argv)
    for token in it:
        if token in ("--grid", "--theta"):
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    try:
        if args.command == "list-models":
            sys.stdout.write(cmd_list_models())
            return EXIT_OK
        if args.command == "appendix-check":
            if args.trials < 1:
                raise ConfigError("trials", "must be >= 1")
            dims = tuple(int(d) for d in args.dims.split(","))
            summary = cmd_appendix_check(args.seed, args.trials, dims, args.samples, args.coupling)
            _emit(json.dumps(summary, indent=2, allow_nan=False) + "\n", args.out)
            return EXIT_OK if summary["all_passed"] else EXIT_NUMERIC
        cfg = resolve_config(args)
        command = {"bound": cmd_bound, "compare": cmd_compare, "estimate": cmd_estimate}[args.command]
        reports = command(cfg)
        text = render_csv(reports) if cfg.format == "csv" else render_json(cfg, reports, args.command)
        _emit(text, cfg.out)
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FisherBoundError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
