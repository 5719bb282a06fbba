"""Command-line front end.

Every subcommand resolves its configuration as defaults < ``--config`` file <
flags, validates it against ``schemas/config.schema.json`` and writes one
result document (JSON) or table (CSV).

Exit codes: 0 success, 1 computational error, 2 finished with a warning,
64 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
import time
from importlib import resources
from pathlib import Path
from typing import Any, Callable

import jsonschema
import numpy as np

from . import __version__
from .bounds import hadwiger_ceiling, volume_bounds
from .covering import bracket_weighted_cover, classical_cover_greedy, hadwiger_weighted
from .geometry import DEFAULT_TOL, ConvexBody, GeometryError, body_from_json
from .lp import GAP_TOL, LPError, build_cover_lp, duality_gap, duality_ok, solve_dual, solve_primal
from .metric import FiniteMetric, MetricError, metric_cover_numbers, metric_sandwich_check
from .nets import DEFAULT_BUDGET, grid_net
from .rounding import RNG_ALGORITHM, RoundingFailure, round_cover

log = logging.getLogger("wcover")

EXIT_OK, EXIT_ERROR, EXIT_WARNING, EXIT_USAGE = 0, 1, 2, 64

COMMON_DEFAULTS: dict[str, Any] = {"seed": 0, "format": "json", "output": None,
                                   "workers": os.cpu_count() or 1,
                                   "budget": DEFAULT_BUDGET, "solver": "auto"}
DEFAULTS: dict[str, dict[str, Any]] = {
    "bracket": {"deltas": [0.1, 0.05, 0.02, 0.01], "gap": 0.15, "exact_refine": True},
    "cover-greedy": {"delta": 0.1},
    "round": {"delta": 0.05, "precision": 1e-3, "max_retries": 1000},
    "hadwiger": {"lambdas": [0.5, 0.9, 0.99], "delta": 0.05, "gap": 0.05},
    "volume-bounds": {"samples": None},
    "metric": {"K_indices": None, "epsilons": [1.0]},
    "duality-check": {"delta": 0.1, "triplets": None},
    "net-dump": {"delta": 0.1},
}
REQUIRED = {"bracket": ["K", "T"], "cover-greedy": ["K", "T"], "round": ["K", "T1", "T2"],
            "hadwiger": ["K"], "volume-bounds": ["K", "T"], "metric": ["matrix"],
            "duality-check": ["K", "T"], "net-dump": ["body"]}
BODY_KEYS = ("K", "T", "T1", "T2", "body")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _schema(name: str) -> dict:
    return json.loads(resources.files("wcover").joinpath("schemas", name).read_text())


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _body_arg(text: str) -> Any:
    """Inline JSON when it looks like an object, otherwise a path to a JSON file."""
    if text.lstrip().startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise argparse.ArgumentTypeError(f"bad inline body JSON: {exc}")
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--config", help="JSON config file; flags override its keys")
    g.add_argument("--seed", type=int)
    g.add_argument("--workers", type=int, help="worker threads (default: CPU count)")
    g.add_argument("--format", choices=["json", "csv"])
    g.add_argument("--output", "-o", help="output path (default: stdout)")
    g.add_argument("--budget", type=int, help="largest grid net allowed")
    g.add_argument("--solver", choices=["auto", "simplex", "exact", "highs"])
    g.add_argument("--verbose", "-v", action="store_true")

    p = _Parser(prog="wcover", description="Weighted covering and separation numbers.")
    p.add_argument("--version", action="version", version=f"wcover {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_, description=help_)

    s = add("bracket", "bracket N_w(K, T) along a delta schedule")
    s.add_argument("--K", type=_body_arg)
    s.add_argument("--T", type=_body_arg)
    s.add_argument("--deltas", type=_floats)
    s.add_argument("--gap", type=float, help="target gap")
    s.add_argument("--no-exact-refine", dest="exact_refine", action="store_false", default=None)

    s = add("cover-greedy", "greedy classical cover of K by translates of T")
    s.add_argument("--K", type=_body_arg)
    s.add_argument("--T", type=_body_arg)
    s.add_argument("--delta", type=float)

    s = add("round", "round a weighted cover of K by T1 into a cover by T1 + T2")
    s.add_argument("--K", type=_body_arg)
    s.add_argument("--T1", type=_body_arg)
    s.add_argument("--T2", type=_body_arg)
    s.add_argument("--delta", type=float)
    s.add_argument("--precision", type=float)
    s.add_argument("--max-retries", dest="max_retries", type=int)

    s = add("hadwiger", "brackets for N_w(K, lambda K) along a lambda schedule")
    s.add_argument("--K", type=_body_arg)
    s.add_argument("--lambdas", type=_floats)
    s.add_argument("--delta", type=float)
    s.add_argument("--gap", type=float)

    s = add("volume-bounds", "volume bounds for N*(K, T)")
    s.add_argument("--K", type=_body_arg)
    s.add_argument("--T", type=_body_arg)
    s.add_argument("--samples", type=int)

    s = add("metric", "covering numbers of a finite metric space")
    s.add_argument("--matrix", help="distance matrix, CSV or JSON")
    s.add_argument("--K-indices", dest="K_indices", type=_ints)
    s.add_argument("--epsilons", type=_floats)

    s = add("duality-check", "solve the cover LP and its dual on a delta-net")
    s.add_argument("--K", type=_body_arg)
    s.add_argument("--T", type=_body_arg)
    s.add_argument("--delta", type=float)
    s.add_argument("--triplets", help="also write the covering matrix as triplets")

    s = add("net-dump", "write a delta-net of a body")
    s.add_argument("--body", type=_body_arg)
    s.add_argument("--delta", type=float)
    return p


def _load_body(value: Any, base: Path | None) -> dict:
    if isinstance(value, str):
        path = Path(value)
        if base is not None and not path.is_absolute() and not path.exists():
            path = base / path
        try:
            value = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read body descriptor {value!r}: {exc}")
    try:
        jsonschema.validate(value, _schema("body.schema.json"))
    except jsonschema.ValidationError as exc:
        raise UsageError(f"invalid body descriptor: {exc.message}")
    return value


def resolve_config(args: argparse.Namespace) -> dict[str, Any]:
    """Defaults, then the config file, then flags; bodies loaded; schema-checked."""
    cmd = args.command
    cfg: dict[str, Any] = {"command": cmd, **COMMON_DEFAULTS, **DEFAULTS[cmd]}
    base = None
    if args.config:
        try:
            text = Path(args.config).read_text()
            from_file = json.loads(text)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc}")
        if not isinstance(from_file, dict):
            raise UsageError("config file must hold a JSON object")
        if from_file.get("command", cmd) != cmd:
            raise UsageError(f"config is for {from_file['command']!r}, not {cmd!r}")
        cfg.update(from_file)
        base = Path(args.config).parent
    skip = {"config", "verbose", "command"}
    for key, val in vars(args).items():
        if key not in skip and val is not None:
            cfg[key] = val
    missing = [k for k in REQUIRED[cmd] if cfg.get(k) is None]
    if missing:
        raise UsageError(f"{cmd} needs {', '.join('--' + m for m in missing)}")
    for key in BODY_KEYS:
        if key in cfg:
            cfg[key] = _load_body(cfg[key], base)
    if cmd == "metric" and base is not None and not Path(cfg["matrix"]).exists():
        cfg["matrix"] = str(base / cfg["matrix"])
    try:
        jsonschema.validate(cfg, _schema("config.schema.json"))
    except jsonschema.ValidationError as exc:
        path = ".".join(str(p) for p in exc.absolute_path) or "config"
        raise UsageError(f"invalid config at {path}: {exc.message}")
    return cfg


def _body(cfg, key) -> ConvexBody:
    try:
        return body_from_json(cfg[key])
    except (GeometryError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad body {key!r}: {exc}")


# -- commands: each returns (status, result dict, csv rows) --------------------------

Rows = list[list[Any]]


def cmd_bracket(cfg) -> tuple[str, dict, Rows]:
    K, T = _body(cfg, "K"), _body(cfg, "T")
    br = bracket_weighted_cover(K, T, cfg["deltas"], cfg["gap"],
                                exact_refine=cfg["exact_refine"], solver=cfg["solver"],
                                workers=cfg["workers"], budget=cfg["budget"])
    rows = [["delta", "lower", "upper_eroded", "upper_exact", "best_lower", "best_upper"]]
    for h in br.history:
        rows.append([h["delta"], h["lower"], h.get("upper_eroded"), h.get("upper_exact"),
                     h["best_lower"], h["best_upper"]])
    return ("warning" if br.warning else "ok"), br.to_json(), rows


def cmd_cover_greedy(cfg) -> tuple[str, dict, Rows]:
    K, T = _body(cfg, "K"), _body(cfg, "T")
    cover = classical_cover_greedy(K, T, cfg["delta"], workers=cfg["workers"],
                                   budget=cfg["budget"])
    rows = [[f"x{i}" for i in range(K.dim)]] + cover.centers.tolist()
    return "ok", cover.to_json(), rows


def cmd_round(cfg) -> tuple[str, dict, Rows]:
    K, T1, T2 = _body(cfg, "K"), _body(cfg, "T1"), _body(cfg, "T2")
    res = round_cover(K, T1, T2, cfg["delta"], precision=cfg["precision"], seed=cfg["seed"],
                      max_retries=cfg["max_retries"], solver=cfg["solver"],
                      budget=cfg["budget"])
    out = res.to_json()
    out["within_bound"] = res.cover.size <= res.bound + 1e-9
    rows = [[f"x{i}" for i in range(K.dim)]] + res.cover.centers.tolist()
    return "ok", out, rows


def cmd_hadwiger(cfg) -> tuple[str, dict, Rows]:
    K = _body(cfg, "K")
    ceiling = hadwiger_ceiling(K.dim)
    sched = hadwiger_weighted(K, cfg["lambdas"], cfg["delta"], target_gap=cfg["gap"],
                              solver=cfg["solver"], workers=cfg["workers"],
                              budget=cfg["budget"])
    rows = [["lambda", "lower", "upper", "gap", "ceiling_symmetric", "ceiling_general"]]
    entries = []
    for lam, br in sched:
        rows.append([lam, br.lower, br.upper, br.gap, ceiling["symmetric"], ceiling["general"]])
        entries.append({"lambda": lam, **br.to_json()})
    status = "warning" if any(br.warning for _, br in sched) else "ok"
    return status, {"schedule": entries, "ceiling": ceiling}, rows


def cmd_volume_bounds(cfg) -> tuple[str, dict, Rows]:
    K, T = _body(cfg, "K"), _body(cfg, "T")
    vb = volume_bounds(K, T, cfg["samples"], cfg["seed"])
    rows = [["quantity", "value", "half_width"],
            ["vol_K", vb.vol_K.value, vb.vol_K.half_width],
            ["vol_T", vb.vol_T.value, vb.vol_T.half_width],
            ["vol_K_minus_T", vb.vol_K_minus_T.value, vb.vol_K_minus_T.half_width],
            ["lower", vb.lower, vb.lower_slack],
            ["upper", vb.upper, vb.upper_slack]]
    return "ok", vb.to_json(), rows


def cmd_metric(cfg) -> tuple[str, dict, Rows]:
    try:
        space = FiniteMetric.load(cfg["matrix"], cfg["K_indices"])
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot load metric {cfg['matrix']!r}: {exc}")
    rows = [["epsilon", "N", "N_bar", "M", "M_bar", "N_omega", "M_omega", "N_bar_omega",
             "M_bar_omega", "N_2eps", "sandwich_passed", "exact"]]
    reports, status = [], "ok"
    for eps in cfg["epsilons"]:
        r = metric_cover_numbers(space, eps, solver=cfg["solver"])
        s = metric_sandwich_check(space, eps, solver=cfg["solver"])
        exact = all(r.exact.values()) and s.exact
        if not (s.passed and exact):
            status = "warning"
        reports.append({**r.to_json(), "sandwich": s.to_json()})
        rows.append([eps, r.N, r.N_bar, r.M, r.M_bar, r.N_omega, r.M_omega, r.N_bar_omega,
                     r.M_bar_omega, s.N_2eps, s.passed, exact])
    return status, {"n_points": space.n_points, "K_indices": list(space.K_indices),
                    "reports": reports}, rows


def cmd_duality_check(cfg) -> tuple[str, dict, Rows]:
    K, T = _body(cfg, "K"), _body(cfg, "T")
    net = grid_net(K, cfg["delta"], budget=cfg["budget"])
    lp = build_cover_lp(net.points, net.points, T, K, workers=cfg["workers"])
    primal, _ = solve_primal(lp, cfg["solver"])
    dual, _ = solve_dual(lp, cfg["solver"])
    if cfg["triplets"]:
        lp.to_triplets(cfg["triplets"])
    ok = duality_ok(lp)
    out = {"primal": primal, "dual": dual, "gap": duality_gap(lp), "tolerance": GAP_TOL,
           "ok": ok, "rows": lp.shape[0], "cols": lp.shape[1], "nnz": int(lp.M.nnz),
           "net_points": len(net), "net_radius": net.radius, "triplets": cfg["triplets"]}
    rows = [["primal", "dual", "gap", "rows", "cols", "nnz"],
            [primal, dual, out["gap"], out["rows"], out["cols"], out["nnz"]]]
    if not ok:
        raise LPError(f"duality gap {out['gap']:.3g} above tolerance")
    return "ok", out, rows


def cmd_net_dump(cfg) -> tuple[str, dict, Rows]:
    body = _body(cfg, "body")
    net = grid_net(body, cfg["delta"], budget=cfg["budget"])
    out = {"points": net.points.tolist(), "size": len(net), "delta": net.delta,
           "radius": net.radius, "spacing": net.spacing}
    # the net CSV has no header: one point per row
    return "ok", out, [[repr(float(v)) for v in p] for p in net.points]


COMMANDS: dict[str, Callable[[dict], tuple[str, dict, Rows]]] = {
    "bracket": cmd_bracket, "cover-greedy": cmd_cover_greedy, "round": cmd_round,
    "hadwiger": cmd_hadwiger, "volume-bounds": cmd_volume_bounds, "metric": cmd_metric,
    "duality-check": cmd_duality_check, "net-dump": cmd_net_dump,
}


def _clean(obj):
    """JSON-safe copy: numpy scalars unwrapped, non-finite floats as strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")
    return obj


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_text(rows: Rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(["" if v is None else v for v in r])
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"wcover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    message = None
    rows: Rows = []
    try:
        status, result, rows = COMMANDS[cfg["command"]](cfg)
    except UsageError as exc:
        print(f"wcover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RoundingFailure as exc:
        status, message = "error", str(exc)
        result = {"trials": exc.trials, "coverage_failures": exc.coverage_failures,
                  "size_failures": exc.size_failures, "rng": RNG_ALGORITHM}
    except (LPError, GeometryError, MetricError, ValueError) as exc:
        status, message, result = "error", str(exc), {}
    wall = time.perf_counter() - t0
    if status == "warning" and message is None:
        message = result.get("warning") if isinstance(result, dict) else None
    doc = {"tool": "wcover", "version": __version__, "command": cfg["command"],
           "config": cfg, "seed": cfg["seed"],
           "tolerances": {"membership": DEFAULT_TOL, "duality": GAP_TOL},
           "wall_clock_seconds": wall, "status": status, "message": message,
           "result": result}
    if cfg["format"] == "csv" and status != "error":
        _emit(_csv_text(rows), cfg["output"])
    else:
        _emit(json.dumps(_clean(doc), indent=2) + "\n", cfg["output"])
    if message:
        print(f"wcover: {status}: {message}", file=sys.stderr)
    return {"ok": EXIT_OK, "warning": EXIT_WARNING, "error": EXIT_ERROR}[status]


if __name__ == "__main__":
    sys.exit(main())
