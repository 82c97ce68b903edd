"""Command-line front end.

Subcommands: run (adaptive trace), sweep (fixed-decision grid), split
(bandwidth-split baseline), frontier (penalty-weight trade-off), table
(success-table dump). Every invocation writes CSV files plus a manifest
into --out; --plots additionally renders PNG figures under <out>/figures.
Exit status is 0 on success and nonzero with a one-line error otherwise.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from . import config as config_mod
from . import outputs
from ._version import __version__
from .engine import (
    ScenarioConfig,
    SplitConfig,
    run_adaptive,
    run_bandwidth_split,
    run_frontier,
    run_grid,
)
from .engine import derive_stream
from .optimizer import build_success_table

COMMANDS = ("run", "sweep", "split", "frontier", "table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gocoexist",
        description="Goal-oriented/data-oriented uplink coexistence simulator.",
    )
    parser.add_argument("--version", action="version", version=f"gocoexist {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(COMMANDS) + "}")
    for name, help_text in (
        ("run", "adaptive (or genie) slot simulation producing a trace"),
        ("sweep", "fixed-decision effectiveness sweep over a grid"),
        ("split", "bandwidth-split baseline over candidate fractions"),
        ("frontier", "effectiveness/cost trade-off over penalty weights"),
        ("table", "estimate and dump the success-probability table"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", metavar="PATH", help="JSON config file")
        p.add_argument("--preset", metavar="NAME",
                       help="named protocol: " + ", ".join(config_mod.available_presets()))
        p.add_argument("--out", metavar="DIR", default="out", help="output directory")
        p.add_argument("--seed", type=int, metavar="U64", help="master seed override")
        p.add_argument("--omega", metavar="LIST",
                       help="penalty weight(s), comma separated (list for frontier only)")
        p.add_argument("--quiet", action="store_true", help="suppress progress lines")
        p.add_argument("--plots", action="store_true", help="render PNG figures too")
    return parser


def _parse_omegas(raw: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in raw.split(",") if tok.strip() != "")
    except ValueError:
        raise config_mod.ConfigError(f"--omega must be a comma-separated float list, got {raw!r}")
    if not values:
        raise config_mod.ConfigError("--omega needs at least one value")
    return values


def _load(args) -> tuple[ScenarioConfig, str | None, str]:
    """Resolve config + seed precedence: --seed > environment > file/preset."""
    if not args.config and not args.preset:
        raise config_mod.ConfigError("one of --config or --preset is required")
    if args.config and args.preset:
        raise config_mod.ConfigError("--config and --preset are mutually exclusive")
    if args.seed is not None:
        if args.seed < 0:
            raise config_mod.ConfigError("--seed must be non-negative")
        seed_override, seed_source = args.seed, "flag"
    else:
        env = config_mod.env_seed()
        if env is not None:
            seed_override, seed_source = env, "environment"
        else:
            seed_override, seed_source = None, "config"
    if args.config:
        cfg = config_mod.load_config(args.config, seed_override=seed_override)
        return cfg, None, seed_source
    cfg = config_mod.resolve_preset(args.preset, seed_override=seed_override)
    return cfg, args.preset, seed_source


def _say(args, message: str) -> None:
    if not args.quiet:
        print(message)


def _figures_dir(args) -> str:
    path = os.path.join(args.out, "figures")
    os.makedirs(path, exist_ok=True)
    return path


def _cmd_run(args, cfg: ScenarioConfig, preset, seed_source) -> int:
    if cfg.mode not in ("adaptive", "genie"):
        cfg = replace(cfg, mode="adaptive")
    omega = None
    if args.omega:
        values = _parse_omegas(args.omega)
        if len(values) != 1:
            raise config_mod.ConfigError("--omega accepts a single value for 'run'")
        omega = values[0]
        cfg = replace(cfg, solver=replace(cfg.solver, omega=omega))
    _say(args, f"running {cfg.slots} slots (mode {cfg.mode}, seed {cfg.seed})")
    trace = run_adaptive(cfg)
    written = [outputs.write_trace(trace, os.path.join(args.out, "trace.csv"))]
    if cfg.mode != "genie" and cfg.solver.mode != "genie":
        table = build_success_table(
            cfg.oracle, cfg.radio.per_grid, cfg.requirements.theta_th,
            cfg.radio.packets_per_batch, cfg.solver.validation_batches,
            derive_stream(cfg.seed, 5, 0),
        )
        written.append(outputs.write_success_table(
            table, os.path.join(args.out, "success_table.csv")))
    written.append(outputs.write_summary(
        outputs.trace_summary_pairs(trace), os.path.join(args.out, "summary.csv")))
    if args.plots:
        from . import plots
        written.extend(plots.plot_trace(trace, _figures_dir(args)))
    written.append(outputs.write_manifest(
        cfg, "run", os.path.join(args.out, "manifest.json"),
        preset=preset, seed_source=seed_source, outputs=written))
    for path in written:
        _say(args, f"wrote {path}")
    _say(args, f"effectiveness {trace.effectiveness():.4f}, cost {trace.cost():.4f}")
    return 0


def _cmd_sweep(args, cfg: ScenarioConfig, preset, seed_source) -> int:
    if cfg.sweep is None:
        raise config_mod.ConfigError("sweep command needs a sweep section in the config")
    _say(args, f"sweeping {cfg.sweep.kind} grid over {cfg.slots} slots (seed {cfg.seed})")
    maps = run_grid(cfg)
    written = []
    summary = [("heatmaps", len(maps)), ("kind", cfg.sweep.kind),
               ("rd_max_avg_bps", maps[0].rd_max_avg_bps)]
    for k, hm in enumerate(maps, start=1):
        written.append(outputs.write_heatmap(hm, os.path.join(args.out, f"heatmap_{k}.csv")))
        written.append(outputs.write_heatmap_detail(
            hm, os.path.join(args.out, f"heatmap_{k}_detail.csv")))
        written.append(outputs.write_contours(
            hm, os.path.join(args.out, f"heatmap_{k}_contours.csv")))
        summary.append((f"heatmap_{k}_theta_th", hm.theta_th))
        if args.plots:
            from . import plots
            written.append(plots.plot_heatmap(
                hm, os.path.join(_figures_dir(args), f"heatmap_{k}.png")))
    written.append(outputs.write_summary(summary, os.path.join(args.out, "summary.csv")))
    written.append(outputs.write_manifest(
        cfg, "sweep", os.path.join(args.out, "manifest.json"),
        preset=preset, seed_source=seed_source, outputs=written))
    for path in written:
        _say(args, f"wrote {path}")
    return 0


def _cmd_split(args, cfg: ScenarioConfig, preset, seed_source) -> int:
    if cfg.split is None:
        cfg = replace(cfg, split=SplitConfig())
    _say(args, f"evaluating {len(cfg.split.fractions)} split fractions over {cfg.slots} slots")
    result = run_bandwidth_split(cfg)
    written = [outputs.write_split(result, os.path.join(args.out, "split.csv"))]
    pairs = [
        ("candidates", result.fractions.size),
        ("rd_max_avg_bps", result.rd_max_avg_bps),
        ("e_th", result.e_th),
        ("best_fraction", "" if result.best_index is None
         else result.fractions[result.best_index]),
        ("best_cost", "" if result.best_cost is None else result.best_cost),
    ]
    written.append(outputs.write_summary(pairs, os.path.join(args.out, "summary.csv")))
    if args.plots:
        from . import plots
        written.append(plots.plot_split(
            result, os.path.join(_figures_dir(args), "split.png")))
    written.append(outputs.write_manifest(
        cfg, "split", os.path.join(args.out, "manifest.json"),
        preset=preset, seed_source=seed_source, outputs=written))
    for path in written:
        _say(args, f"wrote {path}")
    if result.best_index is None:
        _say(args, "no feasible split candidate")
    else:
        _say(args, f"best split fraction {result.fractions[result.best_index]:.2f}, "
                   f"cost {result.best_cost:.4f}")
    return 0


def _cmd_frontier(args, cfg: ScenarioConfig, preset, seed_source) -> int:
    if args.omega:
        cfg = replace(cfg, frontier=replace(cfg.frontier, omegas=_parse_omegas(args.omega)))
    n_th = len(cfg.frontier.theta_ths) or 1
    n_modes = 2 if cfg.frontier.include_genie else 1
    n_runs = len(cfg.frontier.omegas) * n_th * n_modes
    _say(args, f"tracing frontier: {n_runs} runs of {cfg.slots} slots (seed {cfg.seed})")
    result = run_frontier(cfg)
    written = [outputs.write_frontier(result, os.path.join(args.out, "frontier.csv"))]
    pairs = [("points", len(result.points)), ("rd_max_avg_bps", result.rd_max_avg_bps),
             ("e_th", result.e_th)]
    written.append(outputs.write_summary(pairs, os.path.join(args.out, "summary.csv")))
    if args.plots:
        from . import plots
        written.append(plots.plot_frontier(
            result, os.path.join(_figures_dir(args), "frontier.png")))
    written.append(outputs.write_manifest(
        cfg, "frontier", os.path.join(args.out, "manifest.json"),
        preset=preset, seed_source=seed_source, outputs=written))
    for path in written:
        _say(args, f"wrote {path}")
    return 0


def _cmd_table(args, cfg: ScenarioConfig, preset, seed_source) -> int:
    _say(args, f"estimating success table ({cfg.solver.validation_batches} batches per level)")
    table = build_success_table(
        cfg.oracle, cfg.radio.per_grid, cfg.requirements.theta_th,
        cfg.radio.packets_per_batch, cfg.solver.validation_batches,
        derive_stream(cfg.seed, 5, 0),
    )
    written = [outputs.write_success_table(
        table, os.path.join(args.out, "success_table.csv"))]
    written.append(outputs.write_manifest(
        cfg, "table", os.path.join(args.out, "manifest.json"),
        preset=preset, seed_source=seed_source, outputs=written))
    for path in written:
        _say(args, f"wrote {path}")
    return 0


_HANDLERS = {
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "split": _cmd_split,
    "frontier": _cmd_frontier,
    "table": _cmd_table,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        cfg, preset, seed_source = _load(args)
        os.makedirs(args.out, exist_ok=True)
        return _HANDLERS[args.command](args, cfg, preset, seed_source)
    except config_mod.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
