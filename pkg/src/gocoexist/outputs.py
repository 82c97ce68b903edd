"""Deterministic CSV emission and the run manifest.

All CSV writers format floats with Python's shortest round-trip repr and a
fixed row order, so identical runs produce byte-identical files. The
manifest echoes the resolved configuration and records provenance; its
timestamp is the one field deliberately excluded from determinism.
"""

from __future__ import annotations

import json
import math
import os
from datetime import datetime, timezone

import numpy as np

from ._version import __version__
from . import compute as compute_mod
from . import metrics as metrics_mod
from .config import emit_config
from .engine import FrontierResult, HeatmapData, ScenarioConfig, SplitResult, TraceLog
from .optimizer import SuccessProbTable

TRACE_HEADER = "slot,gamma,p_d_w,theta,d_tx_s,d_comp_s,d_tot_s,success,r_d_bps,z,mov_eff,mov_cost"


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    f = float(value)
    return repr(f)


def _write_lines(path, lines) -> str:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")
    return str(path)


def write_trace(trace: TraceLog, path) -> str:
    """Per-slot trace; moving columns stay empty until index window-1."""
    mov_eff = trace.moving_effectiveness()
    mov_cost = trace.moving_cost()
    d_tot = trace.d_tot_s
    first_defined = trace.window - 1
    lines = [TRACE_HEADER]
    for t in range(trace.slots):
        defined = t >= first_defined and trace.window <= trace.slots
        lines.append(",".join([
            str(t),
            _fmt(trace.gamma[t]),
            _fmt(trace.p_d_w[t]),
            _fmt(trace.theta[t]),
            _fmt(trace.d_tx_s[t]),
            _fmt(trace.d_comp_s[t]),
            _fmt(d_tot[t]),
            str(int(trace.success[t])),
            _fmt(trace.r_d_bps[t]),
            _fmt(trace.z[t]),
            _fmt(mov_eff[t]) if defined else "",
            _fmt(mov_cost[t]) if defined else "",
        ]))
    return _write_lines(path, lines)


def write_heatmap(hm: HeatmapData, path) -> str:
    """Compact x,y,effectiveness map.

    x is the deadline for per_dmax sweeps and the per-cell goal cost for
    per_power sweeps; y is the grid PER. Rows iterate PER outer, x inner.
    """
    lines = ["x,y,effectiveness"]
    for i in range(hm.per_values.size):
        for j in range(hm.x_values.size):
            x = hm.x_values[j] if hm.kind == "per_dmax" else hm.cost[i, j]
            lines.append(",".join([_fmt(x), _fmt(hm.per_values[i]), _fmt(hm.effectiveness[i, j])]))
    return _write_lines(path, lines)


def write_heatmap_detail(hm: HeatmapData, path) -> str:
    """Everything known per sweep cell, one row per (PER, x) pair."""
    header = f"per,{hm.x_kind},effectiveness,eff_theta,eff_delay,mean_rd_bps,cost"
    lines = [header]
    for i in range(hm.per_values.size):
        for j in range(hm.x_values.size):
            lines.append(",".join([
                _fmt(hm.per_values[i]),
                _fmt(hm.x_values[j]),
                _fmt(hm.effectiveness[i, j]),
                _fmt(hm.eff_theta[i, j]),
                _fmt(hm.eff_delay[i, j]),
                _fmt(hm.mean_rd_bps[i, j]),
                _fmt(hm.cost[i, j]),
            ]))
    return _write_lines(path, lines)


def write_contours(hm: HeatmapData, path) -> str:
    """Feasible-region summary per effectiveness threshold.

    min_cost_in_region is left empty when no cell clears the threshold.
    """
    lines = ["threshold,feasible_cell_count,min_cost_in_region"]
    for thr, count, min_cost in hm.contour_summary():
        lines.append(",".join([
            _fmt(thr), str(count), "" if min_cost is None else _fmt(min_cost),
        ]))
    return _write_lines(path, lines)


def write_frontier(fr: FrontierResult, path) -> str:
    lines = ["omega,theta_th,mode,effectiveness,cost,cost_se,avg_rd_bps,final_z"]
    for p in fr.points:
        lines.append(",".join([
            _fmt(p.omega), _fmt(p.theta_th), p.mode,
            _fmt(p.effectiveness), _fmt(p.cost), _fmt(p.cost_se),
            _fmt(p.avg_rd_bps), _fmt(p.final_z),
        ]))
    return _write_lines(path, lines)


def write_split(sr: SplitResult, path) -> str:
    lines = ["fraction,w_g_hz,effectiveness,cost,feasible,chosen"]
    feas = sr.feasible
    for k in range(sr.fractions.size):
        lines.append(",".join([
            _fmt(sr.fractions[k]), _fmt(sr.w_g_hz[k]),
            _fmt(sr.effectiveness[k]), _fmt(sr.cost[k]),
            str(int(feas[k])), str(int(sr.best_index == k)),
        ]))
    return _write_lines(path, lines)


def write_success_table(table: SuccessProbTable, path) -> str:
    lines = ["per_level,p_success,n_samples"]
    for i in range(table.per_levels.size):
        lines.append(",".join([
            _fmt(table.per_levels[i]), _fmt(table.p_success[i]), str(int(table.n_samples[i])),
        ]))
    return _write_lines(path, lines)


def write_summary(pairs, path) -> str:
    """key,value rows; values go through the shared float formatting."""
    lines = ["key,value"]
    for key, value in pairs:
        lines.append(f"{key},{value if isinstance(value, str) else _fmt(value)}")
    return _write_lines(path, lines)


def trace_summary_pairs(trace: TraceLog) -> list[tuple[str, object]]:
    pairs = [
        ("slots", trace.slots),
        ("effectiveness", trace.effectiveness()),
        ("avg_rd_bps", trace.avg_rd_bps()),
        ("rd_max_avg_bps", trace.rd_max_avg_bps),
        ("cost", trace.cost()),
        ("final_z", float(trace.z[-1])),
        ("final_z_over_t", float(trace.z[-1]) / trace.slots),
        ("mean_gamma", float(trace.gamma.mean())),
        ("mean_p_d_w", float(trace.p_d_w.mean())),
        ("mean_d_tot_s", float(np.mean(trace.d_tot_s[np.isfinite(trace.d_tot_s)]))
         if np.isfinite(trace.d_tot_s).any() else math.inf),
    ]
    return pairs


def write_manifest(
    cfg: ScenarioConfig,
    command: str,
    path,
    preset: str | None = None,
    seed_source: str = "config",
    outputs: list[str] | None = None,
) -> str:
    """Provenance record for one output bundle (not byte-deterministic)."""
    default_hist = compute_mod.default_compute_model().distribution
    manifest = {
        "package": "gocoexist",
        "version": __version__,
        "command": command,
        "preset": preset,
        "figure": preset,
        "seed": cfg.seed,
        "seed_source": seed_source,
        "synthetic_defaults": {
            "compute_delay_is_packaged_default": cfg.compute.distribution == default_hist,
            "oracle_is_parametric": isinstance(cfg.oracle, metrics_mod.ParametricEntropyOracle),
        },
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "outputs": [os.path.basename(p) for p in (outputs or [])],
        "config": emit_config(cfg),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=False)
        fh.write("\n")
    return str(path)
