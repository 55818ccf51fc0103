"""Configuration loading, run orchestration and serialization.

Subcommands: classify, run, scan, verify-linear, verify-decay.  Exit codes:
0 success, 1 verification failure, 2 usage/configuration error.  Results are
written as plot-ready CSV time series (17 significant digits, LF endings) and
JSON summaries with a fixed key order.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .diagnostics import fit_decay_rate, linear_exponent_suite
from .integrator import IntegratorConfig, RunRecord, run_simulation
from .nonlinearity import (
    ParseError,
    classify_system,
    format_monomial,
    parse_nonlinearity,
)
from .scenarios import (
    SystemSpec,
    ScanResult,
    build_burgers_scalar,
    build_cas3,
    build_esclev,
    build_linear,
    build_toy,
    gaussian_initial_data,
    linear_gaussian_exact,
    scan_parameter,
)
from .spectral import make_grid

__all__ = ["RunConfig", "ConfigError", "load_config", "write_timeseries",
           "write_summary", "cli_dispatch", "main"]


# ---------------------------------------------------------------------------
# Scenario registry
# ---------------------------------------------------------------------------

_BUILDERS = {
    "linear": (build_linear, {"n": 2, "d": (1.0, 1.0), "c": (1.0, -1.0)}),
    "toy": (build_toy, {"r": 2, "q": 4, "d1": 1.0, "d2": 1.0, "c1": 1.0, "c2": -1.0}),
    "cas3": (build_cas3, {"d1": 1.0, "d2": 1.0, "c1": 0.0, "c2": 1.0,
                          "kappa": 1.0, "beta": 0.0, "gamma": 1.0}),
    "esclev": (build_esclev, {"p1": 1, "q1": 2, "p2": 2, "q2": 1,
                              "c1": 0.0, "c2": 0.0}),
    "burgers-scalar": (build_burgers_scalar, {"d": 1.0, "c": 0.0}),
}


def _build_custom(n: int, d, c, f):
    return SystemSpec(
        n=n, d=tuple(float(v) for v in d), c=tuple(float(v) for v in c),
        f=parse_nonlinearity(f, n),
    )


def build_scenario(name: str, params: dict) -> SystemSpec:
    if name == "custom":
        return _build_custom(**params)
    builder, defaults = _BUILDERS[name]
    kwargs = dict(defaults)
    kwargs.update(params)
    return builder(**kwargs)


# ---------------------------------------------------------------------------
# Config files
# ---------------------------------------------------------------------------

class ConfigError(ValueError):
    """Carries every violation found in a config file, not just the first."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("invalid configuration:\n  " + "\n  ".join(violations))


@dataclass
class RunConfig:
    scenario_name: str
    scenario_params: dict
    grid_n: int
    grid_length: float
    integrator: IntegratorConfig
    amplitudes: list
    widths: list
    centers: list
    fit_window: tuple[float, float]
    envelopes: bool
    output_dir: str
    formats: list
    write_fields: bool = False

    def build(self):
        system = build_scenario(self.scenario_name, self.scenario_params)
        grid = make_grid(self.grid_n, self.grid_length)
        init = gaussian_initial_data(
            system.n, self.amplitudes, self.widths, self.centers, grid
        )
        return system, grid, init


_DEFAULTS = {
    "grid": {"N": 1024, "L": 200.0},
    "integrator": {"dt": 0.01, "t_end": 10.0, "output_every": 0.5,
                   "blowup_factor": 1e3, "boundary_threshold": 1e-8,
                   "boundary_margin": 0.05, "pad_ratio": None},
    "initial_data": {"amplitudes": 1.0, "widths": 1.0, "centers": 0.0},
    "diagnostics": {"fit_window": [0.25, 1.0], "envelopes": True},
    "output": {"directory": "out", "formats": ["csv", "json"], "fields": False},
}

_KNOWN_KEYS = {
    "scenario": None,  # free-form besides "name"
    "grid": {"N", "L"},
    "integrator": {"dt", "t_end", "output_every", "blowup_factor",
                   "boundary_threshold", "boundary_margin", "pad_ratio"},
    "initial_data": {"amplitudes", "widths", "centers"},
    "diagnostics": {"fit_window", "envelopes"},
    "output": {"directory", "formats", "fields"},
}

_SCENARIO_PARAM_TYPES = {
    "linear": {"n": int, "d": list, "c": list},
    "toy": {"r": int, "q": int, "d1": float, "d2": float, "c1": float, "c2": float},
    "cas3": {"d1": float, "d2": float, "c1": float, "c2": float,
             "kappa": float, "beta": float, "gamma": float},
    "esclev": {"p1": int, "q1": int, "p2": int, "q2": int, "c1": float, "c2": float},
    "burgers-scalar": {"d": float, "c": float},
    "custom": {"n": int, "d": list, "c": list, "f": list},
}


def load_config(path) -> RunConfig:
    """Parse and fully validate a JSON run configuration.

    Every violation is collected and reported with its key path; defaults
    (dt=0.01, N=1024, L=200, ...) fill any omitted key.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError([f"not valid JSON: {exc}"]) from None

    violations: list[str] = []

    for section in raw:
        if section not in _KNOWN_KEYS:
            violations.append(f"{section}: unknown section")
    merged = {}
    for section, defaults in _DEFAULTS.items():
        merged[section] = dict(defaults)
        supplied = raw.get(section, {})
        if not isinstance(supplied, dict):
            violations.append(f"{section}: expected an object")
            continue
        for key, value in supplied.items():
            allowed = _KNOWN_KEYS[section]
            if allowed is not None and key not in allowed:
                violations.append(f"{section}.{key}: unknown key")
                continue
            merged[section][key] = value

    scenario = raw.get("scenario", {})
    if not isinstance(scenario, dict) or "name" not in scenario:
        violations.append("scenario.name: required")
        name, params = "linear", {}
    else:
        name = scenario["name"]
        params = {k: v for k, v in scenario.items() if k != "name"}
        if name not in _SCENARIO_PARAM_TYPES:
            violations.append(
                f"scenario.name: unknown scenario {name!r}; "
                f"choose from {sorted(_SCENARIO_PARAM_TYPES)}"
            )
            params = {}
        else:
            types = _SCENARIO_PARAM_TYPES[name]
            for key, value in list(params.items()):
                if key not in types:
                    violations.append(f"scenario.{key}: unknown parameter for {name}")
                    params.pop(key)
            for key in ("d1", "d2"):
                if key in params and not (isinstance(params[key], (int, float))
                                          and params[key] > 0):
                    violations.append(f"scenario.{key}: must be a positive number")
            if "d" in params and any(
                not isinstance(v, (int, float)) or v <= 0 for v in params["d"]
            ):
                violations.append("scenario.d: entries must be positive numbers")

    g = merged["grid"]
    if not (isinstance(g["N"], int) and g["N"] >= 16 and (g["N"] & (g["N"] - 1)) == 0):
        violations.append(f"grid.N: must be a power of two >= 16, got {g['N']!r}")
    if not (isinstance(g["L"], (int, float)) and g["L"] > 0):
        violations.append(f"grid.L: must be positive, got {g['L']!r}")

    it = merged["integrator"]
    for key, positive in (("dt", True), ("t_end", True), ("output_every", True)):
        v = it[key]
        if not (isinstance(v, (int, float)) and (v > 0 or not positive)):
            violations.append(f"integrator.{key}: must be a positive number, got {v!r}")
    if isinstance(it["dt"], (int, float)) and isinstance(it["output_every"], (int, float)):
        if 0 < it["output_every"] < it["dt"]:
            violations.append("integrator.output_every: must be >= integrator.dt")
    if not (isinstance(it["blowup_factor"], (int, float)) and it["blowup_factor"] >= 10):
        violations.append("integrator.blowup_factor: must be >= 10")

    di = merged["diagnostics"]
    fw = di["fit_window"]
    if not (isinstance(fw, (list, tuple)) and len(fw) == 2
            and all(isinstance(v, (int, float)) for v in fw)
            and 0 < fw[0] < fw[1] <= 1):
        violations.append(
            "diagnostics.fit_window: expected fractions [a, b] with 0 < a < b <= 1"
        )
        fw = [0.25, 1.0]

    out = merged["output"]
    if not isinstance(out["formats"], list) or not set(out["formats"]) <= {"csv", "json"}:
        violations.append("output.formats: expected a subset of ['csv', 'json']")

    if violations:
        raise ConfigError(violations)

    integrator = IntegratorConfig(
        dt=float(it["dt"]),
        t_end=float(it["t_end"]),
        output_every=float(it["output_every"]),
        blowup_factor=float(it["blowup_factor"]),
        boundary_threshold=float(it["boundary_threshold"]),
        boundary_margin=float(it["boundary_margin"]),
        pad_ratio=it["pad_ratio"],
    )
    ini = merged["initial_data"]
    return RunConfig(
        scenario_name=name,
        scenario_params=params,
        grid_n=g["N"],
        grid_length=float(g["L"]),
        integrator=integrator,
        amplitudes=ini["amplitudes"],
        widths=ini["widths"],
        centers=ini["centers"],
        fit_window=(float(fw[0]), float(fw[1])),
        envelopes=bool(di["envelopes"]),
        output_dir=out["directory"],
        formats=list(out["formats"]),
        write_fields=bool(out["fields"]),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def write_timeseries(record: RunRecord, path) -> None:
    """CSV: t, then per component sup_u..envelope_du, then eta; one row per
    snapshot, 17 significant digits, LF line endings."""
    n = record.system.n
    columns = ["t"]
    per_component = ["sup_u", "sup_du", "n00", "n10", "n01", "n11", "n10_2",
                     "envelope_u", "envelope_du"]
    for i in range(1, n + 1):
        columns.extend(f"{name}{i}" for name in per_component)
    columns.append("eta")
    lines = [",".join(columns)]
    for rec in record.snapshots:
        row = [_fmt(rec.t)]
        for i in range(n):
            row.extend(_fmt(getattr(rec, name)[i]) for name in per_component)
        row.append(_fmt(rec.eta))
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")


def make_field_writer(grid, directory):
    """Callback for run_simulation that dumps (x, u_1..u_n) CSVs per snapshot."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    def write(t, fields):
        n = fields.shape[0]
        lines = ["x," + ",".join(f"u{i + 1}" for i in range(n))]
        for j in range(fields.shape[1]):
            lines.append(
                ",".join([_fmt(grid.x[j])] + [_fmt(fields[i, j]) for i in range(n)])
            )
        (directory / f"fields_t{t:012.6f}.csv").write_text(
            "\n".join(lines) + "\n", newline="\n"
        )

    return write


def _classification_table(system: SystemSpec) -> list[dict]:
    verdict = classify_system(system)
    table = []
    for report in verdict.reports:
        table.append({
            "component": report.component,
            "term": format_monomial(report.monomial),
            "p": report.term_class.p,
            "category": report.term_class.category.value,
            "mixed": report.term_class.is_mixed,
            "burgers": report.term_class.is_burgers,
            "violation": report.violation,
        })
    return table


def _status_json(status):
    if status.kind == "completed":
        return "completed"
    if status.kind == "blowup":
        return {"blowup_at": status.t}
    return {"boundary_contaminated_at": status.t}


def write_summary(result, path, scenario_echo: dict | None = None,
                  slopes: dict | None = None) -> None:
    """JSON summary with a fixed key order for diffability.

    Accepts a RunRecord or a ScanResult; the key set depends only on the
    result type, never on numeric outcomes.
    """
    out: dict = {"tool_version": __version__}
    if scenario_echo is not None:
        out["scenario"] = scenario_echo
    if isinstance(result, RunRecord):
        verdict = classify_system(result.system)
        out["classification"] = _classification_table(result.system)
        out["verdict"] = "admissible" if verdict.admissible else "not admissible"
        out["violations"] = verdict.violations
        out["status"] = _status_json(result.status)
        if slopes is not None:
            out["slopes"] = slopes
        finite_etas = [rec.eta for rec in result.snapshots
                       if math.isfinite(rec.eta)]
        out["eta_max"] = max(finite_etas) if finite_etas else None
    elif isinstance(result, ScanResult):
        out["parameter"] = result.parameter
        out["rows"] = [
            {
                "value": row.value,
                "status": row.status_kind,
                "status_t": row.status_t,
                "sup_u_slope": row.sup_u_slope,
                "blowup_time": row.blowup_time,
                "eta_max": None if math.isnan(row.eta_max) else row.eta_max,
            }
            for row in result.rows
        ]
    else:  # classification-only
        out["classification"] = _classification_table(result)
        verdict = classify_system(result)
        out["verdict"] = "admissible" if verdict.admissible else "not admissible"
        out["violations"] = verdict.violations
    Path(path).write_text(json.dumps(out, indent=2, sort_keys=False) + "\n",
                          newline="\n")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _scenario_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--system", required=True,
                        choices=sorted(_SCENARIO_PARAM_TYPES))
    for flag in ("r", "q", "p1", "q1", "p2", "q2", "n"):
        parser.add_argument(f"--{flag}", type=int)
    for flag in ("d1", "d2", "c1", "c2", "kappa", "beta", "gamma"):
        parser.add_argument(f"--{flag}", type=float)
    parser.add_argument("--d", type=str,
                        help="comma-separated diffusion list (scalar for burgers)")
    parser.add_argument("--c", type=str,
                        help="comma-separated velocity list (scalar for burgers)")
    parser.add_argument("--f", action="append",
                        help="nonlinearity expression, once per component")


def _scenario_from_args(args) -> SystemSpec:
    name = args.system
    types = _SCENARIO_PARAM_TYPES[name]
    params = {}
    for key in types:
        value = getattr(args, key, None)
        if value is None:
            continue
        if key in ("d", "c") and isinstance(value, str):
            parts = [float(v) for v in value.split(",")]
            value = parts[0] if types[key] is float else parts
        params[key] = value
    if name == "custom":
        if "f" not in params or "n" not in params:
            raise SystemExit2("custom scenarios need --n and one --f per component")
        params.setdefault("d", [1.0] * params["n"])
        params.setdefault("c", [float(i) for i in range(params["n"])])
    return build_scenario(name, params)


class SystemExit2(Exception):
    """Usage error that should terminate with exit code 2."""


def cmd_classify(args) -> int:
    system = _scenario_from_args(args)
    verdict = classify_system(system)
    rows = _classification_table(system)
    header = f"{'eq':>3} {'term':<30} {'p':>2} {'category':<10} {'mixed':<5} {'burgers':<7} violation"
    print(header)
    for row in rows:
        print(
            f"{row['component']:>3} {row['term']:<30} {row['p']:>2} "
            f"{row['category']:<10} {str(row['mixed']):<5} "
            f"{str(row['burgers']):<7} {row['violation'] or '-'}"
        )
    for violation in verdict.velocity_violations:
        print(f"  ! {violation}")
    print(f"verdict: {'admissible' if verdict.admissible else 'not admissible'}")
    if args.json:
        write_summary(system, args.json, scenario_echo={"name": args.system})
    return 0


def _run_from_config(cfg: RunConfig, field_callback=None):
    system, grid, init = cfg.build()
    record = run_simulation(system, init, grid, cfg.integrator,
                            field_callback=field_callback)
    slopes = {}
    if record.status.is_completed and len(record.snapshots) >= 10:
        times = record.times
        window = (cfg.fit_window[0] * cfg.integrator.t_end,
                  cfg.fit_window[1] * cfg.integrator.t_end)
        for name in ("sup_u", "sup_du"):
            series = np.max(
                np.stack([getattr(rec, name) for rec in record.snapshots]), axis=1
            )
            try:
                slope, stderr = fit_decay_rate(times, series, window)
                slopes[f"{name}_slope"] = slope
                slopes[f"{name}_stderr"] = stderr
            except ValueError:
                pass
    return record, slopes


def cmd_run(args) -> int:
    cfg = load_config(args.config)
    outdir = Path(args.output or cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    callback = None
    if cfg.write_fields or args.fields:
        grid = make_grid(cfg.grid_n, cfg.grid_length)
        callback = make_field_writer(grid, outdir / "fields")
    record, slopes = _run_from_config(cfg, field_callback=callback)
    if "csv" in cfg.formats:
        write_timeseries(record, outdir / "timeseries.csv")
    if "json" in cfg.formats:
        write_summary(
            record, outdir / "summary.json",
            scenario_echo={"name": cfg.scenario_name, **cfg.scenario_params},
            slopes=slopes or None,
        )
    print(f"status: {record.status.kind}"
          + (f" at t = {record.status.t}" if record.status.t is not None else ""))
    return 0


def cmd_scan(args) -> int:
    cfg = load_config(args.config)
    if cfg.scenario_name in ("custom",):
        raise SystemExit2("scan does not support custom scenarios")
    builder, defaults = _BUILDERS[cfg.scenario_name]
    base = dict(defaults)
    base.update(cfg.scenario_params)
    values = [float(v) for v in args.values.split(",")] if args.values else []
    system0 = build_scenario(cfg.scenario_name, cfg.scenario_params)
    grid = make_grid(cfg.grid_n, cfg.grid_length)
    init = gaussian_initial_data(
        system0.n, cfg.amplitudes, cfg.widths, cfg.centers, grid
    )
    result = scan_parameter(
        builder, base, args.parameter, values, grid, cfg.integrator, init,
        fit_window=(cfg.fit_window[0] * cfg.integrator.t_end,
                    cfg.fit_window[1] * cfg.integrator.t_end),
    )
    outdir = Path(args.output or cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    write_summary(result, outdir / "scan.json",
                  scenario_echo={"name": cfg.scenario_name, **cfg.scenario_params})
    for row in result.rows:
        print(f"{args.parameter} = {row.value}: {row.status_kind}"
              + (f" (t = {row.status_t})" if row.status_t is not None else "")
              + (f", sup_u slope {row.sup_u_slope:+.3f}"
                 if row.sup_u_slope is not None else ""))
    return 0


def cmd_verify_linear(args) -> int:
    """Exact-Gaussian propagation check plus the linear norm-decay exponents."""
    failures = 0
    grid = make_grid(args.N, args.L)
    system = build_linear(n=2, d=(1.0, 1.0), c=(-1.0, 1.0))
    init = gaussian_initial_data(2, 1.0, 1.0, 0.0, grid)

    from .spectral import forward_transform, inverse_transform
    from .integrator import EtdRk4Stepper

    stepper = EtdRk4Stepper(system, grid, args.dt)
    vhat = forward_transform(init, grid)
    for _ in range(round(args.t_end / args.dt)):
        vhat = stepper.step(vhat)
    u_num = inverse_transform(vhat, grid).real
    err = 0.0
    for i, c_i in enumerate(system.c):
        exact = linear_gaussian_exact(system.d[i], c_i, grid.x, args.t_end)
        err = max(err, float(np.max(np.abs(u_num[i] - exact))))
    ok = err < args.tol
    print(f"{'PASS' if ok else 'FAIL'} gaussian-exactness: max error {err:.3e} "
          f"(tolerance {args.tol:.1e})")
    failures += 0 if ok else 1

    if args.exponents:
        grid_e = make_grid(args.exponents_N, args.exponents_L)
        init_e = gaussian_initial_data(2, 1.0, 1.0, 0.0, grid_e)
        table = linear_exponent_suite(
            (1.0, 1.0), (1.0, -1.0), init_e, grid_e, t_end=args.exponents_t_end,
        )
        for (j, m), (slope, stderr, predicted) in sorted(table.items()):
            ok = abs(slope - predicted) <= 0.1
            print(f"{'PASS' if ok else 'FAIL'} exponent (j={j}, m={m}): "
                  f"fitted {slope:+.3f} +- {stderr:.3f}, predicted {predicted:+.2f}")
            failures += 0 if ok else 1
    return 1 if failures else 0


_DECAY_CHECKS = {
    # scenario -> (expected sup_u slope window, expected sup_du slope window)
    "toy": ((-0.6, -0.4), (-1.2, -0.8)),
    "cas3": ((-0.6, -0.4), None),
    "burgers-scalar": ((-0.6, -0.4), None),
}


def cmd_verify_decay(args) -> int:
    cfg = load_config(args.config)
    if cfg.scenario_name not in _DECAY_CHECKS:
        raise SystemExit2(
            f"verify-decay supports {sorted(_DECAY_CHECKS)}, "
            f"not {cfg.scenario_name!r}"
        )
    record, slopes = _run_from_config(cfg)
    failures = 0
    if not record.status.is_completed:
        print(f"FAIL run status: {record.status.kind} at t = {record.status.t}")
        return 1
    print(f"PASS run status: completed to t = {cfg.integrator.t_end}")
    u_window, du_window = _DECAY_CHECKS[cfg.scenario_name]
    for name, window in (("sup_u", u_window), ("sup_du", du_window)):
        if window is None:
            continue
        slope = slopes.get(f"{name}_slope")
        if slope is None:
            print(f"FAIL {name} slope: not enough samples to fit")
            failures += 1
            continue
        ok = window[0] <= slope <= window[1]
        print(f"{'PASS' if ok else 'FAIL'} {name} slope {slope:+.3f} "
              f"in [{window[0]}, {window[1]}]")
        failures += 0 if ok else 1
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdasim",
        description="Simulate reaction-diffusion-advection systems and verify "
                    "decay rates, localization and blow-up behavior.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="print the term table and verdict")
    _scenario_args(p)
    p.add_argument("--json", help="also write a JSON summary here")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("run", help="execute one simulation from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--output", help="output directory (overrides config)")
    p.add_argument("--fields", action="store_true",
                   help="also dump full-field CSVs per snapshot")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("scan", help="rerun a scenario over parameter values")
    p.add_argument("--config", required=True)
    p.add_argument("--parameter", required=True)
    p.add_argument("--values", required=True, help="comma-separated values")
    p.add_argument("--output")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify-linear",
                       help="exact-Gaussian and norm-exponent checks")
    p.add_argument("--N", type=int, default=1024)
    p.add_argument("--L", type=float, default=200.0)
    p.add_argument("--t-end", type=float, default=10.0, dest="t_end")
    p.add_argument("--dt", type=float, default=0.05)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--exponents", action="store_true",
                   help="also fit the four weighted-norm exponents")
    p.add_argument("--exponents-N", type=int, default=1024, dest="exponents_N")
    p.add_argument("--exponents-L", type=float, default=800.0, dest="exponents_L")
    p.add_argument("--exponents-t-end", type=float, default=200.0,
                   dest="exponents_t_end")
    p.set_defaults(func=cmd_verify_linear)

    p = sub.add_parser("verify-decay",
                       help="run a scenario and check its fitted slopes")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_verify_decay)

    return parser


def cli_dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, FileNotFoundError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
