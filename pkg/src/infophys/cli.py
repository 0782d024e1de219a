"""Command-line front end.

    infophys exponents --out runs/
    infophys broadcast-bsc --config bsc.json --units bits
    infophys verify-all

Every subcommand writes ``<out>/<subcommand>.json`` (or ``.csv`` with
``--format csv``) echoing the effective configuration, plus one CSV per
curve.  Exit codes: 1 invalid config, 2 domain error, 3 failed check in
``verify-all``.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import reporting
from .commands import (
    DEFAULTS,
    RUNNERS,
    SUBCOMMANDS,
    merge_params,
    merge_tolerances,
    sweep_invariants,
)
from .errors import DomainError
from .exponents import BISECTION_TOL
from .quadrature import DEFAULT_TOL, MAX_DEPTH

EXIT_CONFIG = 1
EXIT_DOMAIN = 2
EXIT_VIOLATION = 3

CONFIG_KEYS = {"subcommand", "params", "tolerances", "out", "format", "units", "seed"}


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="infophys", description=__doc__.splitlines()[0])
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", type=Path, help="JSON run configuration")
    parser.add_argument("--out", type=Path, help="output directory (default: .)")
    parser.add_argument("--format", choices=("json", "csv"))
    parser.add_argument("--units", choices=("nats", "bits"))
    parser.add_argument("--seed", type=int, help="seed for randomized diagnostics")
    return parser


def default_config() -> dict:
    text = resources.files("infophys").joinpath("default_config.json").read_text("utf-8")
    return json.loads(text)


def load_config(args) -> dict:
    """Effective config: command-line flags over the config file over defaults."""
    if args.config is not None:
        try:
            cfg = json.loads(args.config.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    elif args.subcommand == "verify-all":
        cfg = default_config()
    else:
        cfg = {}
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(cfg) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if cfg.get("subcommand", args.subcommand) != args.subcommand:
        raise ConfigError(f"config is for {cfg['subcommand']!r}, not {args.subcommand!r}")
    eff = {
        "subcommand": args.subcommand,
        "format": args.format or cfg.get("format", "json"),
        "units": args.units or cfg.get("units", "nats"),
        "seed": args.seed if args.seed is not None else cfg.get("seed", 0),
        "out": str(args.out if args.out is not None else cfg.get("out", ".")),
    }
    if eff["format"] not in ("json", "csv") or eff["units"] not in ("nats", "bits"):
        raise ConfigError("format must be json|csv and units nats|bits")
    if not isinstance(eff["seed"], int) or eff["seed"] < 0:
        raise ConfigError("seed must be a nonnegative integer")
    try:
        eff["tolerances"] = merge_tolerances(cfg.get("tolerances"))
        given = cfg.get("params") or {}
        if args.subcommand == "verify-all":
            unknown = set(given) - set(DEFAULTS)
            if unknown:
                raise KeyError(f"unknown subcommand blocks: {sorted(unknown)}")
            eff["params"] = {name: merge_params(name, given.get(name)) for name in DEFAULTS}
        else:
            eff["params"] = merge_params(args.subcommand, given)
    except (KeyError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return eff


def _report(name: str, cfg: dict, params: dict, result) -> dict:
    return {
        "subcommand": name,
        "config": {"params": params, "tolerances": cfg["tolerances"], "units": cfg["units"],
                   "format": cfg["format"], "seed": cfg["seed"]},
        "model": result.model,
        "numerics": {"quadrature_tol": DEFAULT_TOL, "quadrature_max_depth": MAX_DEPTH,
                     "bisection_tol": BISECTION_TOL},
        "units": cfg["units"],
        "outputs": result.outputs,
        "checks": result.checks,
        "passed": result.ok,
    }


def _emit(out: Path, stem: str, report: dict, curves: dict, cfg: dict) -> list[Path]:
    bits = cfg["units"] == "bits"
    report = reporting.apply_units(report, cfg["units"])
    written = []
    for cname, (columns, rows, entropic) in curves.items():
        if bits:
            idx = [i for i, c in enumerate(columns) if c in entropic]
            rows = [tuple(v / reporting.LN2 if i in idx else v for i, v in enumerate(r))
                    for r in rows]
        path = out / f"{stem}_{cname}.csv"
        reporting.write_text(path, reporting.csv_text(columns, [
            tuple(float(v) if isinstance(v, (float, np.floating)) else v for v in r)
            for r in rows]))
        written.append(path)
        report.setdefault("curve_files", {})[cname] = path.name
    if cfg["format"] == "json":
        path = out / f"{stem}.json"
        reporting.write_text(path, reporting.dumps(report))
    else:
        flat = reporting.flatten(reporting._plain(report))
        path = out / f"{stem}.csv"
        reporting.write_text(path, reporting.csv_text(list(flat), [list(flat.values())]))
    written.append(path)
    return written


def run(cfg: dict) -> int:
    name = cfg["subcommand"]
    out = Path(cfg["out"])
    tol = cfg["tolerances"]
    if name != "verify-all":
        result = RUNNERS[name](cfg["params"], tol)
        _emit(out, name.replace("-", "_"), _report(name, cfg, cfg["params"], result),
              result.curves, cfg)
        return 0

    summary = {}
    failed = []
    for sub, runner in RUNNERS.items():
        params = cfg["params"][sub]
        result = runner(params, tol)
        stem = "verify_" + sub.replace("-", "_")
        _emit(out, stem, _report(sub, cfg, params, result), result.curves, cfg)
        summary[sub] = result.ok
        failed += [f"{sub}:{c['name']}" for c in result.checks if not c["passed"]]
    sweep = sweep_invariants(np.random.default_rng(cfg["seed"]), tol)
    _emit(out, "verify_sweeps", _report("sweeps", cfg, {"seed": cfg["seed"]}, sweep), {}, cfg)
    summary["sweeps"] = sweep.ok
    failed += [f"sweeps:{c['name']}" for c in sweep.checks if not c["passed"]]
    _emit(out, "verify_all", {"subcommand": "verify-all", "results": summary,
                              "failed_checks": failed, "passed": not failed}, {}, cfg)
    for f in failed:
        print(f"check failed: {f}", file=sys.stderr)
    return EXIT_VIOLATION if failed else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
    except ConfigError as exc:
        print(f"infophys: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return run(cfg)
    except DomainError as exc:
        print(f"infophys: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (KeyError, TypeError) as exc:
        print(f"infophys: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
