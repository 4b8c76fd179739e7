"""Command-line interface.

Subcommands: ``analytic``, ``estimate``, ``simulate``, ``chaos``, ``market``.
Each accepts ``--config FILE.json``; command-line flags override the config.
Exit codes: 0 success, 2 input/config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import chaos, estimation, market, measures, simulation
from .models import parse_model
from .numerics import DEFAULT_QUADRATURE

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3

MEASURES = ("qfcri", "qfcre", "qcri", "qfcrir", "mlf", "record", "equilibrium", "phm", "bounds")


class ConfigError(ValueError):
    pass


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return "" if math.isnan(v) else f"{float(v):.12g}"
    return str(v)


def _table_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _table_json(header, rows) -> str:
    return json.dumps([dict(zip(header, r)) for r in rows], indent=2)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _merge(args, keys) -> dict:
    """Config file values, overridden by flags that were actually given."""
    cfg = {}
    if getattr(args, "config", None):
        try:
            cfg = json.loads(Path(args.config).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{args.config}: invalid JSON ({exc})") from None
        if not isinstance(cfg, dict):
            raise ConfigError(f"{args.config}: top level must be an object")
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    return cfg


def _require(cfg, key):
    if cfg.get(key) is None:
        raise ConfigError(f"missing required setting {key!r}")
    return cfg[key]


def _alphas(cfg) -> list[float]:
    a = _require(cfg, "alpha")
    return [float(v) for v in (a if isinstance(a, list) else [a])]


# ---------------------------------------------------------------------------


def _analytic_row(measure, x, y, alpha, cfg):
    q = DEFAULT_QUADRATURE
    method = cfg.get("method", "auto")
    if measure in ("qfcri", "qcri", "qfcrir", "mlf", "bounds", "equilibrium") and y is None:
        if measure != "equilibrium":
            raise ConfigError(f"measure {measure!r} needs --y")
    if measure == "qfcri":
        r = measures.qfcri(x, y, alpha, q, method)
    elif measure == "qfcre":
        r = measures.qfcre(x, alpha, q, method)
    elif measure == "qcri":
        r = measures.qcri(x, y, q, method)
    elif measure == "qfcrir":
        r = measures.qfcrir(x, y, alpha, q, method)
    elif measure == "mlf":
        r = measures.mlf_qfcri(x, y, alpha, q, method)
    elif measure == "record":
        r = measures.qfcri_upper_record(x, int(cfg.get("m", 1)), alpha, q, method)
    elif measure == "phm":
        r = measures.qfcri_phm(x, float(cfg.get("beta", 1.0)), alpha, q, method)
    elif measure == "equilibrium":
        r = (measures.qfcri_equilibrium_self(x, alpha, q) if y is None
             else measures.qfcri_equilibrium_pair(x, y, alpha, q))
    else:  # bounds
        value = measures.qfcri(x, y, alpha, q, method).value
        return [alpha, value, measures.bound_lower_q3(x, y, alpha, q),
                measures.bound_entropy(x, y, alpha, q)]
    return [alpha, r.value, r.abs_error_estimate, r.method]


def cmd_analytic(args) -> int:
    cfg = _merge(args, ["x", "y", "alpha", "measure", "method", "beta", "m"])
    measure = cfg.get("measure", "qfcri")
    if measure not in MEASURES:
        raise ConfigError(f"unknown measure {measure!r}; choose from {MEASURES}")
    x = parse_model(_require(cfg, "x"))
    y = parse_model(cfg["y"]) if cfg.get("y") else None
    rows = [_analytic_row(measure, x, y, a, cfg) for a in _alphas(cfg)]
    header = (["alpha", "qfcri", "lower_q3", "lower_entropy"] if measure == "bounds"
              else ["alpha", "value", "abs_error", "method"])
    return _write_table(args, header, rows)


def read_sample_file(path) -> np.ndarray:
    """One decimal per line; blank lines and ``#`` comments skipped."""
    vals = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vals.append(float(line))
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: not a number: {line!r}") from None
    if not vals:
        raise ConfigError(f"{path}: empty sample file")
    return np.array(vals)


def cmd_estimate(args) -> int:
    cfg = _merge(args, ["x", "y", "alpha", "convention", "origin"])
    xs = read_sample_file(_require(cfg, "x"))
    ys = read_sample_file(_require(cfg, "y"))
    conv = cfg.get("convention", estimation.PLOTTING_POSITION)
    origin = cfg.get("origin", 0.0)
    if isinstance(origin, str) and origin != "min":
        origin = float(origin)
    rows = [[a, estimation.estimate_qfcri(xs, ys, a, conv, origin)] for a in _alphas(cfg)]
    return _write_table(args, ["alpha", "estimate"], rows)


def cmd_simulate(args) -> int:
    cfg = _merge(args, ["preset", "x", "y", "alpha", "replications", "sample_sizes",
                        "seed", "threads"])
    if "seed" in cfg:
        cfg["base_seed"] = int(cfg.pop("seed"))
    preset = cfg.pop("preset", None)
    if preset is not None:
        if preset not in simulation.REFERENCE_PLANS:
            raise ConfigError(f"unknown preset {preset!r}; choose from {sorted(simulation.REFERENCE_PLANS)}")
        px, py, pa = simulation.REFERENCE_PLANS[preset]
        cfg.setdefault("x", px)
        cfg.setdefault("y", py)
        cfg.setdefault("alpha", pa)
    for key in ("x", "y", "alpha"):
        _require(cfg, key)
    try:
        plan = simulation.SimulationPlan.from_dict(cfg)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
    report = simulation.run_plan(plan)
    _emit(report.to_json() + "\n" if args.format == "json" else report.to_csv(), args.out)
    print(f"true value {report.true_value:.12g}", file=sys.stderr)
    return EXIT_OK


def _axis(cfg, name, kind):
    if name in cfg:
        return [float(v) for v in cfg[name]]
    size = int(cfg.get("size", 50))
    lo, hi = cfg.get("min"), cfg.get("max")
    if lo is None and hi is None:
        return chaos.default_axis(kind, size).tolist()
    d = chaos.default_axis(kind, 2)
    return np.linspace(d[0] if lo is None else lo, d[1] if hi is None else hi, size).tolist()


def cmd_chaos(args) -> int:
    cfg = _merge(args, ["kind", "alpha", "size", "min", "max", "n", "x1", "actual_axis", "threads"])
    kind = cfg.get("kind", "logistic")
    if kind not in chaos.KINDS:
        raise ConfigError(f"kind must be one of {chaos.KINDS}")
    alpha = _alphas(cfg)
    if len(alpha) != 1:
        raise ConfigError("chaos takes a single alpha")
    grid = chaos.discrepancy_grid(
        kind,
        _axis(cfg, "axis1", kind),
        _axis(cfg, "axis2", kind),
        alpha[0],
        x1=cfg.get("x1"),
        n=int(cfg.get("n", 1000)),
        actual_axis=int(cfg.get("actual_axis", chaos.PRESET_ACTUAL_AXIS[kind])),
        threads=int(cfg.get("threads", 1)),
    )
    _emit(grid.to_json() + "\n" if args.format == "json" else grid.to_csv(), args.out)
    if grid.failures:
        print(f"{len(grid.failures)} cell(s) failed", file=sys.stderr)
    return EXIT_OK


def cmd_market(args) -> int:
    cfg = _merge(args, ["prices", "alpha", "shift", "date_column", "close_column",
                        "date_format", "plot_data"])
    fmt = cfg.get("date_format", "%Y-%m-%d")
    prices = market.load_prices(
        _require(cfg, "prices"),
        cfg.get("date_column", "date"),
        cfg.get("close_column", "close"),
        fmt,
    )
    returns = market.log_returns(prices)
    regimes = dict(market.DEFAULT_REGIMES)
    for d in cfg.get("regimes", []):
        r = market.RegimeSpec.from_dict(d, fmt)
        regimes[r.name] = r
    pairs = cfg.get("pairs", market.DEFAULT_PAIRS)
    alphas = _alphas(cfg) if cfg.get("alpha") is not None else [i / 10 for i in range(1, 11)]
    tables = []
    for a_name, b_name in pairs:
        if a_name not in regimes or b_name not in regimes:
            raise ConfigError(f"unknown regime in pair ({a_name}, {b_name})")
        tables.append(market.regime_discrepancy(
            returns, regimes[a_name], regimes[b_name], alphas, cfg.get("shift", "window")))
    if args.format == "json":
        text = market.tables_to_json(tables) + "\n"
    else:
        text = _table_csv(
            ["pair", "alpha", "forward", "reverse"],
            [[f"{t.a}_vs_{t.b}", al, f, r]
             for t in tables for al, f, r in zip(t.alphas, t.forward, t.reverse)],
        )
    _emit(text, args.out)
    if cfg.get("plot_data"):
        Path(cfg["plot_data"]).write_text(market.plot_data_csv(tables))
    return EXIT_OK


def _write_table(args, header, rows) -> int:
    text = _table_json(header, rows) + "\n" if args.format == "json" else _table_csv(header, rows)
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qfcri", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its values")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)

    a = sub.add_parser("analytic", parents=[common], help="closed-form / quadrature measures")
    a.add_argument("--x", help="true model spec, e.g. exponential:lambda=1")
    a.add_argument("--y", help="assigned model spec")
    a.add_argument("--alpha", type=float, nargs="+")
    a.add_argument("--measure", choices=MEASURES)
    a.add_argument("--method", choices=("auto", "quadrature", "closed_form"))
    a.add_argument("--beta", type=float, help="proportional-hazards constant (phm)")
    a.add_argument("--m", type=int, help="record index (record)")
    a.set_defaults(func=cmd_analytic)

    e = sub.add_parser("estimate", parents=[common], help="plug-in estimate from sample files")
    e.add_argument("--x", help="file of true-sample values, one per line")
    e.add_argument("--y", help="file of assigned-sample values")
    e.add_argument("--alpha", type=float, nargs="+")
    e.add_argument("--convention", choices=estimation.CONVENTIONS)
    e.add_argument("--origin", help="X_(0): a number or 'min'")
    e.set_defaults(func=cmd_estimate)

    s = sub.add_parser("simulate", parents=[common], help="Monte-Carlo bias/MSE study")
    s.add_argument("--preset", help=f"one of {sorted(simulation.REFERENCE_PLANS)}")
    s.add_argument("--x")
    s.add_argument("--y")
    s.add_argument("--alpha", type=float)
    s.add_argument("--replications", type=int)
    s.add_argument("--sample-sizes", dest="sample_sizes", type=int, nargs="+")
    s.set_defaults(func=cmd_simulate)

    c = sub.add_parser("chaos", parents=[common], help="map-parameter discrepancy grid")
    c.add_argument("--kind", choices=chaos.KINDS)
    c.add_argument("--alpha", type=float)
    c.add_argument("--size", type=int, help="points per axis (default 50)")
    c.add_argument("--min", type=float)
    c.add_argument("--max", type=float)
    c.add_argument("--n", type=int, help="orbit length (default 1000)")
    c.add_argument("--x1", type=float)
    c.add_argument("--actual-axis", dest="actual_axis", type=int, choices=(1, 2))
    c.set_defaults(func=cmd_chaos)

    m = sub.add_parser("market", parents=[common], help="regime-pair curves from closing prices")
    m.add_argument("--prices", help="CSV with a header row")
    m.add_argument("--alpha", type=float, nargs="+")
    m.add_argument("--shift", choices=("window", "global"))
    m.add_argument("--date-column", dest="date_column")
    m.add_argument("--close-column", dest="close_column")
    m.add_argument("--date-format", dest="date_format")
    m.add_argument("--plot-data", dest="plot_data", help="also write long-format plot data here")
    m.set_defaults(func=cmd_market)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, LookupError, OSError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
