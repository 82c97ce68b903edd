"""Figure rendering for traces, sweeps, frontiers, and split baselines.

Uses the non-interactive Agg backend and writes PNG files; callers pass the
destination paths. Kept separate from the CSV writers so headless runs can
skip matplotlib entirely.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .engine import FrontierResult, HeatmapData, SplitResult, TraceLog


def _finish(fig, path) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return str(path)


def plot_trace(trace: TraceLog, out_dir) -> list[str]:
    """Moving effectiveness, moving cost, and queue trajectory PNGs."""
    t = np.arange(trace.slots)
    event_slots = np.flatnonzero(
        np.diff(trace.theta_th_active) != 0
    ).tolist() + np.flatnonzero(
        np.diff(trace.e_th_active) != 0
    ).tolist() + np.flatnonzero(np.diff(trace.d_max_active) != 0).tolist()
    paths = []

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(t, trace.moving_effectiveness(), lw=1.2, label="moving effectiveness")
    ax.plot(t, trace.e_th_active, "k--", lw=1.0, label="target")
    for s in sorted(set(event_slots)):
        ax.axvline(s + 1, color="gray", ls=":", lw=0.8)
    ax.set_xlabel("slot")
    ax.set_ylabel("effectiveness")
    ax.set_ylim(0.0, 1.05)
    ax.legend(loc="lower right")
    paths.append(_finish(fig, f"{out_dir}/trace_effectiveness.png"))

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(t, trace.moving_cost(), lw=1.2, color="tab:red")
    for s in sorted(set(event_slots)):
        ax.axvline(s + 1, color="gray", ls=":", lw=0.8)
    ax.set_xlabel("slot")
    ax.set_ylabel("moving goal cost")
    paths.append(_finish(fig, f"{out_dir}/trace_cost.png"))

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(t, trace.z, lw=1.0, color="tab:purple")
    ax.set_xlabel("slot")
    ax.set_ylabel("virtual queue")
    paths.append(_finish(fig, f"{out_dir}/trace_queue.png"))
    return paths


def plot_heatmap(hm: HeatmapData, path) -> str:
    """Effectiveness map over (PER, deadline) or (PER, DO power) cells."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    y = np.arange(hm.per_values.size)
    if hm.x_kind == "d_max_s":
        x = hm.x_values * 1e3
        ax.set_xlabel("deadline (ms)")
    else:
        x = hm.x_values * 1e3
        ax.set_xlabel("DO transmit power (mW)")
    mesh = ax.pcolormesh(x, y, hm.effectiveness, shading="nearest",
                         vmin=0.0, vmax=1.0, cmap="viridis")
    if x.size > 1 and y.size > 1:
        cs = ax.contour(x, y, hm.effectiveness, levels=sorted(hm.contour_thresholds),
                        colors="white", linewidths=1.0)
        ax.clabel(cs, fmt="%.2f", fontsize=7)
    ax.set_yticks(y)
    ax.set_yticklabels([f"{g:.0e}" for g in hm.per_values], fontsize=7)
    ax.set_ylabel("target PER")
    ax.set_title(f"effectiveness, quality threshold {hm.theta_th:g}")
    fig.colorbar(mesh, ax=ax, label="effectiveness")
    return _finish(fig, path)


def plot_frontier(fr: FrontierResult, path) -> str:
    """Effectiveness vs goal cost, one curve per (threshold, solver flavor)."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    combos = sorted({(p.theta_th, p.mode) for p in fr.points})
    colors = plt.cm.tab10(np.linspace(0, 1, 10))
    theta_list = sorted({th for th, _ in combos})
    for th, mode in combos:
        pts = [p for p in fr.points if p.theta_th == th and p.mode == mode]
        pts.sort(key=lambda p: p.omega)
        c = colors[theta_list.index(th) % 10]
        ls = "--" if mode == "genie" else "-"
        ax.plot([p.cost for p in pts], [p.effectiveness for p in pts],
                ls, color=c, marker="o", ms=3,
                label=f"threshold {th:g} ({mode})")
    ax.axhline(fr.e_th, color="k", ls=":", lw=0.8)
    ax.set_xlabel("goal cost")
    ax.set_ylabel("effectiveness")
    ax.legend(fontsize=7)
    return _finish(fig, path)


def plot_split(sr: SplitResult, path) -> str:
    """Effectiveness and cost against the GO subband fraction."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(sr.fractions, sr.effectiveness, "o-", color="tab:blue", label="effectiveness")
    ax.axhline(sr.e_th, color="tab:blue", ls=":", lw=0.8)
    ax.set_xlabel("GO subband fraction")
    ax.set_ylabel("effectiveness", color="tab:blue")
    ax.set_ylim(0.0, 1.05)
    ax2 = ax.twinx()
    ax2.plot(sr.fractions, sr.cost, "s-", color="tab:red", label="cost")
    ax2.set_ylabel("goal cost", color="tab:red")
    if sr.best_index is not None:
        ax.axvline(sr.fractions[sr.best_index], color="gray", ls="--", lw=0.8)
    return _finish(fig, path)
