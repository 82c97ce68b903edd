"""Monte Carlo slot simulation: adaptive runs, grid sweeps, split baselines.

Slots are i.i.d.: each draws a fresh channel realization and computing delay.
An adaptive run walks the virtual-queue controller through the slot sequence
(applying any scheduled requirement changes at the start of their slot,
before the decision); a grid sweep freezes the decision per cell and maps
effectiveness over the grid; the bandwidth-split baseline gives the
goal-oriented user an exclusive subband instead of sharing the whole band.

Reproducibility: every random stream is derived from the master seed and a
fixed role path via numpy's SeedSequence, so runs are bitwise reproducible
and independent of evaluation order. Role ids: 1 channel, 2 computing delay,
3 packet errors, 4 oracle noise, (5, k) k-th success-table build, (6, i) and
(7, i) per-PER-level errors/oracle noise in grid sweeps, (8, k, j) streams of
the k-th split candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import compute as compute_mod
from . import metrics as metrics_mod
from . import rf
from .optimizer import (
    GridEvaluator,
    SolverConfig,
    SuccessProbTable,
    build_success_table,
    update_queue,
)

RUN_MODES = ("adaptive", "genie", "grid-sweep", "bandwidth-split")
EVENT_FIELDS = ("theta_th", "effectiveness_target", "d_max_s", "compute_offset_s")
SWEEP_KINDS = ("per_dmax", "per_power")


def derive_stream(seed: int, *path: int) -> np.random.Generator:
    """Documented stream-splitting rule: SeedSequence([seed, *role path])."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, path)]))


@dataclass(frozen=True)
class Event:
    """One scheduled requirement change, applied at the start of its slot."""

    slot: int
    fld: str
    value: float

    def __post_init__(self):
        if self.slot < 0:
            raise ValueError("event slot must be >= 0")
        if self.fld not in EVENT_FIELDS:
            raise ValueError(f"event field must be one of {EVENT_FIELDS}, got {self.fld!r}")
        if self.fld == "effectiveness_target" and not (0.0 < self.value < 1.0):
            raise ValueError("effectiveness_target event value must lie in (0, 1)")
        if self.fld == "d_max_s" and self.value <= 0:
            raise ValueError("d_max_s event value must be positive")
        if self.fld == "compute_offset_s" and self.value < 0:
            raise ValueError("compute_offset_s event value must be >= 0")


@dataclass(frozen=True)
class GridSweepConfig:
    """Axes of a fixed-decision sweep.

    per_dmax: PER grid x deadline grid at one fixed DO power.
    per_power: PER grid x DO power grid at one fixed deadline.
    Empty tuples fall back to the radio grids / requirement values.
    """

    kind: str = "per_power"
    d_max_grid_s: tuple[float, ...] = ()
    fixed_power_w: float | None = None
    power_grid_w: tuple[float, ...] = ()
    per_grid: tuple[float, ...] = ()
    theta_ths: tuple[float, ...] = ()
    contour_thresholds: tuple[float, ...] = (0.7, 0.8, 0.9)

    def __post_init__(self):
        if self.kind not in SWEEP_KINDS:
            raise ValueError(f"sweep kind must be one of {SWEEP_KINDS}, got {self.kind!r}")
        if self.kind == "per_dmax" and len(self.d_max_grid_s) == 0:
            raise ValueError("per_dmax sweep needs a d_max_grid_s")
        if any(t <= 0 for t in self.d_max_grid_s):
            raise ValueError("d_max_grid_s values must be positive")
        if any(not (0.0 < c < 1.0) for c in self.contour_thresholds):
            raise ValueError("contour_thresholds must lie in (0, 1)")


@dataclass(frozen=True)
class SplitConfig:
    """Candidate fractions of the band handed exclusively to the GO user."""

    fractions: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)

    def __post_init__(self):
        if len(self.fractions) == 0:
            raise ValueError("split needs at least one candidate fraction")
        if any(not (0.0 < f <= 1.0) for f in self.fractions):
            raise ValueError("split fractions must lie in (0, 1]")
        if any(b <= a for a, b in zip(self.fractions, self.fractions[1:])):
            raise ValueError("split fractions must be strictly increasing")


@dataclass(frozen=True)
class FrontierConfig:
    """Penalty-weight sweep tracing the effectiveness/cost trade-off."""

    omegas: tuple[float, ...] = (1e-11, 1e-10, 3e-10, 1e-9, 3e-9, 1e-8)
    theta_ths: tuple[float, ...] = ()
    include_genie: bool = True

    def __post_init__(self):
        if len(self.omegas) == 0:
            raise ValueError("frontier needs at least one omega")
        if any(o < 0 for o in self.omegas):
            raise ValueError("frontier omegas must be >= 0")


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything one simulation needs, including its master seed."""

    slots: int = 50000
    seed: int = 42
    window: int = 2000
    mode: str = "adaptive"
    geometry: rf.Geometry = field(default_factory=rf.Geometry)
    fading: rf.FadingParams = field(default_factory=rf.FadingParams)
    radio: rf.RadioConfig = field(default_factory=rf.RadioConfig)
    compute: compute_mod.ComputeDelayModel = field(default_factory=compute_mod.default_compute_model)
    oracle: metrics_mod.EntropyOracle = field(default_factory=metrics_mod.ParametricEntropyOracle)
    requirements: metrics_mod.GoalRequirements = field(default_factory=metrics_mod.GoalRequirements)
    solver: SolverConfig = field(default_factory=SolverConfig)
    events: tuple[Event, ...] = ()
    sweep: GridSweepConfig | None = None
    split: SplitConfig | None = None
    frontier: FrontierConfig = field(default_factory=FrontierConfig)

    def __post_init__(self):
        if self.slots < 1:
            raise ValueError(f"slots must be >= 1, got {self.slots}")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.mode not in RUN_MODES:
            raise ValueError(f"mode must be one of {RUN_MODES}, got {self.mode!r}")
        slots_seen = [e.slot for e in self.events]
        if any(b <= a for a, b in zip(slots_seen, slots_seen[1:])):
            raise ValueError("event slots must be strictly increasing")
        if any(e.slot >= self.slots for e in self.events):
            raise ValueError("event slots must be < slots")
        if self.mode == "grid-sweep" and self.sweep is None:
            raise ValueError("grid-sweep mode needs a sweep section")
        if self.mode == "bandwidth-split" and self.split is None:
            raise ValueError("bandwidth-split mode needs a split section")


def moving_average(values, window: int) -> np.ndarray:
    """Trailing moving average, defined from index window-1 onward (NaN before)."""
    x = np.asarray(values, dtype=float)
    if window < 1:
        raise ValueError("window must be >= 1")
    if window > x.size:
        raise ValueError(f"window {window} exceeds series length {x.size}")
    csum = np.concatenate([[0.0], np.cumsum(x)])
    out = np.full(x.size, np.nan)
    out[window - 1:] = (csum[window:] - csum[:-window]) / window
    return out


@dataclass
class TraceLog:
    """Per-slot record of one adaptive run plus derived averages."""

    gamma: np.ndarray
    p_d_w: np.ndarray
    theta: np.ndarray
    d_tx_s: np.ndarray
    d_comp_s: np.ndarray
    success: np.ndarray
    r_d_bps: np.ndarray
    z: np.ndarray
    theta_th_active: np.ndarray
    e_th_active: np.ndarray
    d_max_active: np.ndarray
    window: int
    rd_max_avg_bps: float

    def __post_init__(self):
        n = self.gamma.size
        for name in ("p_d_w", "theta", "d_tx_s", "d_comp_s", "success", "r_d_bps",
                     "z", "theta_th_active", "e_th_active", "d_max_active"):
            if getattr(self, name).size != n:
                raise ValueError(f"trace column {name} has mismatched length")

    @property
    def slots(self) -> int:
        return self.gamma.size

    @property
    def d_tot_s(self) -> np.ndarray:
        return self.d_tx_s + self.d_comp_s

    def effectiveness(self) -> float:
        return float(self.success.mean())

    def avg_rd_bps(self) -> float:
        return float(self.r_d_bps.mean())

    def cost(self) -> float:
        return metrics_mod.goal_cost(self.avg_rd_bps(), self.rd_max_avg_bps)

    def running_effectiveness(self) -> np.ndarray:
        t = np.arange(1, self.slots + 1, dtype=float)
        return np.cumsum(self.success) / t

    def running_cost(self) -> np.ndarray:
        t = np.arange(1, self.slots + 1, dtype=float)
        run_rd = np.cumsum(self.r_d_bps) / t
        return np.clip((self.rd_max_avg_bps - run_rd) / self.rd_max_avg_bps, 0.0, 1.0)

    def moving_effectiveness(self) -> np.ndarray:
        if self.window > self.slots:
            return np.full(self.slots, np.nan)
        return moving_average(self.success.astype(float), self.window)

    def moving_cost(self) -> np.ndarray:
        if self.window > self.slots:
            return np.full(self.slots, np.nan)
        mov_rd = moving_average(self.r_d_bps, self.window)
        return np.clip((self.rd_max_avg_bps - mov_rd) / self.rd_max_avg_bps, 0.0, 1.0)


@dataclass
class HeatmapData:
    """Fixed-decision effectiveness landscape over one grid."""

    kind: str
    theta_th: float
    per_values: np.ndarray
    x_values: np.ndarray
    x_kind: str  # "d_max_s" or "p_d_w"
    effectiveness: np.ndarray
    eff_theta: np.ndarray
    eff_delay: np.ndarray
    mean_rd_bps: np.ndarray
    cost: np.ndarray
    contour_thresholds: tuple[float, ...]
    rd_max_avg_bps: float
    d_max_s: float | None = None
    fixed_power_w: float | None = None

    def __post_init__(self):
        shape = (self.per_values.size, self.x_values.size)
        for name in ("effectiveness", "eff_theta", "eff_delay", "mean_rd_bps", "cost"):
            if getattr(self, name).shape != shape:
                raise ValueError(f"heatmap field {name} has shape {getattr(self, name).shape}, expected {shape}")
        if np.any((self.effectiveness < 0) | (self.effectiveness > 1)):
            raise ValueError("effectiveness must lie in [0, 1]")

    def contour_summary(self) -> list[tuple[float, int, float | None]]:
        """(threshold, feasible cell count, min cost among feasible) rows."""
        rows = []
        for thr in self.contour_thresholds:
            mask = self.effectiveness >= thr
            count = int(mask.sum())
            min_cost = float(self.cost[mask].min()) if count else None
            rows.append((float(thr), count, min_cost))
        return rows


@dataclass
class SplitResult:
    """Bandwidth-split baseline evaluated over candidate GO subband widths."""

    fractions: np.ndarray
    w_g_hz: np.ndarray
    effectiveness: np.ndarray
    cost: np.ndarray
    rd_max_avg_bps: float
    e_th: float
    best_index: int | None

    @property
    def feasible(self) -> np.ndarray:
        return self.effectiveness >= self.e_th

    @property
    def best_cost(self) -> float | None:
        return None if self.best_index is None else float(self.cost[self.best_index])


@dataclass
class _ActiveState:
    theta_th: float
    e_th: float
    d_max_s: float
    compute_offset_s: float


def apply_events(state: _ActiveState, events, slot: int) -> tuple[_ActiveState, bool, bool]:
    """Apply every event scheduled at `slot`; returns (state, theta_changed, offset_changed)."""
    theta_changed = False
    offset_changed = False
    for ev in events:
        if ev.slot != slot:
            continue
        if ev.fld == "theta_th":
            theta_changed = theta_changed or (state.theta_th != ev.value)
            state.theta_th = ev.value
        elif ev.fld == "effectiveness_target":
            state.e_th = ev.value
        elif ev.fld == "d_max_s":
            state.d_max_s = ev.value
        elif ev.fld == "compute_offset_s":
            offset_changed = True
            state.compute_offset_s = ev.value
    return state, theta_changed, offset_changed


def _offset_per_slot(cfg: ScenarioConfig) -> np.ndarray:
    """Additive computing-delay offset active at each slot (events replace it)."""
    off = np.full(cfg.slots, cfg.compute.offset_s)
    for ev in cfg.events:
        if ev.fld == "compute_offset_s":
            off[ev.slot:] = ev.value
    return off


def _reference_rd_avg(cfg: ScenarioConfig, gains: dict[str, np.ndarray]) -> float:
    """Mean DO rate with the GO user silent and the DO user at full power.

    Uses the same channel realizations as the main pass (same stream family),
    so a run with the GO link actually absent reproduces this value exactly.
    """
    radio = cfg.radio
    noise = rf.noise_power(radio.noise_density_dbm_hz, radio.bandwidth_hz, radio.noise_figure_db)
    p_max = radio.do_power_grid_w[-1]
    s = gains["g_dd"] * p_max / (noise + gains["g_dg"] * 0.0)
    return float(np.mean(radio.bandwidth_hz * np.log2(1.0 + s)))


def _build_table(cfg: ScenarioConfig, theta_th: float, rebuild_index: int) -> SuccessProbTable:
    return build_success_table(
        cfg.oracle,
        cfg.radio.per_grid,
        theta_th,
        cfg.radio.packets_per_batch,
        cfg.solver.validation_batches,
        derive_stream(cfg.seed, 5, rebuild_index),
    )


def _adaptive_core(
    cfg: ScenarioConfig,
    gains: dict[str, np.ndarray],
    comp_s: np.ndarray,
    err_rng: np.random.Generator,
    orc_rng: np.random.Generator,
    table: SuccessProbTable | None,
    rebuild_table,
    rd_max_avg_bps: float,
) -> TraceLog:
    """Sequential slot loop shared by the adaptive/genie modes and split runs."""
    radio = cfg.radio
    solver = cfg.solver
    genie = solver.mode == "genie"
    evaluator = GridEvaluator(radio, None if genie else table, solver)
    n_packets = radio.packets_per_batch
    batch_bits = float(radio.batch_bits)
    per_grid = np.asarray(radio.per_grid)
    oracle = cfg.oracle

    state = _ActiveState(
        theta_th=cfg.requirements.theta_th,
        e_th=cfg.requirements.effectiveness_target,
        d_max_s=cfg.requirements.d_max_s,
        compute_offset_s=0.0,  # offsets are already folded into comp_s
    )
    event_slots = {ev.slot for ev in cfg.events}
    rebuild_count = 0

    T = cfg.slots
    g_gg, g_gd, g_dd, g_dg = (gains[k] for k in ("g_gg", "g_gd", "g_dd", "g_dg"))
    out_gamma = np.empty(T)
    out_pd = np.empty(T)
    out_theta = np.empty(T)
    out_dtx = np.empty(T)
    out_succ = np.zeros(T, dtype=np.int8)
    out_rd = np.empty(T)
    out_z = np.empty(T)
    out_th_act = np.empty(T)
    out_eth_act = np.empty(T)
    out_dmax_act = np.empty(T)

    z = 0.0
    since_reestimate = 0
    for t in range(T):
        if t in event_slots:
            state, theta_changed, _ = apply_events(state, cfg.events, t)
            if theta_changed and not genie:
                rebuild_count += 1
                table = rebuild_table(state.theta_th, rebuild_count)
                evaluator = GridEvaluator(radio, table, solver)

        ch = rf.ChannelRealization(g_gg[t], g_gd[t], g_dd[t], g_dg[t])
        d_comp = comp_s[t]

        if genie:
            errs_all = err_rng.binomial(n_packets, per_grid)
            theta_all = metrics_mod.oracle_theta(oracle, errs_all / n_packets, orc_rng)
            weight = (theta_all >= state.theta_th).astype(float)[evaluator.per_indices]
        else:
            weight = evaluator.p_succ
        decision = evaluator.solve(z, ch, d_comp, state.d_max_s, weight)

        if genie:
            theta = float(theta_all[decision.per_index])
        else:
            n_err = err_rng.binomial(n_packets, decision.per)
            theta = metrics_mod.oracle_theta(oracle, n_err / n_packets, orc_rng)

        rate_go = evaluator.rate_at(ch, decision)
        d_tx = batch_bits / rate_go if rate_go > 0 else math.inf
        d_tot = d_tx + d_comp
        succ = theta >= state.theta_th and d_tot <= state.d_max_s
        r_d = evaluator.rate_do_at(ch, decision)

        if solver.online_reestimation and not genie and table is not None:
            table.record_outcome(decision.per_index, theta >= state.theta_th)
            since_reestimate += 1
            if since_reestimate >= solver.reestimate_every:
                table = table.reestimated()
                evaluator = GridEvaluator(radio, table, solver)
                since_reestimate = 0

        z = update_queue(z, succ, state.e_th)

        out_gamma[t] = decision.per
        out_pd[t] = decision.p_d_w
        out_theta[t] = theta
        out_dtx[t] = d_tx
        out_succ[t] = succ
        out_rd[t] = r_d
        out_z[t] = z
        out_th_act[t] = state.theta_th
        out_eth_act[t] = state.e_th
        out_dmax_act[t] = state.d_max_s

    return TraceLog(
        gamma=out_gamma,
        p_d_w=out_pd,
        theta=out_theta,
        d_tx_s=out_dtx,
        d_comp_s=comp_s,
        success=out_succ,
        r_d_bps=out_rd,
        z=out_z,
        theta_th_active=out_th_act,
        e_th_active=out_eth_act,
        d_max_active=out_dmax_act,
        window=cfg.window,
        rd_max_avg_bps=rd_max_avg_bps,
    )


def run_adaptive(cfg: ScenarioConfig) -> TraceLog:
    """Run the virtual-queue controller over `cfg.slots` i.i.d. slots.

    Per slot: apply scheduled events, draw the channel and computing delay,
    solve the drift-plus-penalty grid problem, realize packet errors at the
    chosen PER and the quality index through the oracle, evaluate success
    against the active requirements, and only then update the queue.
    Changing the quality threshold mid-run rebuilds the success table.
    Deterministic given the master seed.
    """
    if cfg.mode not in ("adaptive", "genie"):
        raise ValueError(f"run_adaptive expects mode adaptive or genie, got {cfg.mode!r}")
    solver = cfg.solver
    if cfg.mode == "genie" and solver.mode != "genie":
        solver = replace(solver, mode="genie")
        cfg = replace(cfg, solver=solver)
    gains = rf.sample_channels(cfg.geometry, cfg.fading, derive_stream(cfg.seed, 1), cfg.slots)
    base_model = compute_mod.set_offset(cfg.compute, 0.0)
    comp = compute_mod.sample_comp_delays(base_model, derive_stream(cfg.seed, 2), cfg.slots)
    comp = comp + _offset_per_slot(cfg)
    rd_ref = _reference_rd_avg(cfg, gains)
    table = None
    if solver.mode != "genie":
        table = _build_table(cfg, cfg.requirements.theta_th, 0)
    rebuild = lambda th, k: _build_table(cfg, th, k)  # noqa: E731
    return _adaptive_core(
        cfg, gains, comp, derive_stream(cfg.seed, 3), derive_stream(cfg.seed, 4),
        table, rebuild, rd_ref,
    )


def _theta_ok_per_level(
    cfg: ScenarioConfig, per_values: np.ndarray, theta_ths: tuple[float, ...]
) -> tuple[np.ndarray, np.ndarray]:
    """Realized quality draws per PER level over the sweep's slots.

    Returns (theta_values [n_per, T], ok [n_theta, n_per, T]). Error and
    noise streams are derived per PER level so cells sharing a level reuse
    the same quality path (common random numbers across the other axis).
    """
    T = cfg.slots
    n_pkt = cfg.radio.packets_per_batch
    theta_vals = np.empty((per_values.size, T))
    for i, g in enumerate(per_values):
        errs = derive_stream(cfg.seed, 6, i).binomial(n_pkt, g, size=T)
        theta_vals[i] = metrics_mod.oracle_theta(
            cfg.oracle, errs / n_pkt, derive_stream(cfg.seed, 7, i)
        )
    ok = np.stack([theta_vals >= th for th in theta_ths])
    return theta_vals, ok


def run_grid(cfg: ScenarioConfig) -> list[HeatmapData]:
    """Fixed-decision sweep; one HeatmapData per configured quality threshold.

    All cells share one channel path and, per PER level, one quality path
    (common random numbers), which preserves the exact nesting of success
    regions across deadlines and thresholds.
    """
    if cfg.sweep is None:
        raise ValueError("run_grid needs cfg.sweep")
    sweep = cfg.sweep
    radio = cfg.radio
    T = cfg.slots
    noise = rf.noise_power(radio.noise_density_dbm_hz, radio.bandwidth_hz, radio.noise_figure_db)
    pers = np.asarray(sweep.per_grid if sweep.per_grid else radio.per_grid)
    theta_ths = sweep.theta_ths if sweep.theta_ths else (cfg.requirements.theta_th,)
    gains = rf.sample_channels(cfg.geometry, cfg.fading, derive_stream(cfg.seed, 1), T)
    comp = compute_mod.sample_comp_delays(
        compute_mod.set_offset(cfg.compute, 0.0), derive_stream(cfg.seed, 2), T
    ) + cfg.compute.offset_s
    rd_ref = _reference_rd_avg(cfg, gains)
    _, theta_ok = _theta_ok_per_level(cfg, pers, theta_ths)

    backoff = rf.q_inv(pers) / (math.log(2.0) * math.sqrt(radio.blocklength))
    batch_bits = float(radio.batch_bits)
    p_g = radio.go_tx_power_w
    w_hz = radio.bandwidth_hz

    if sweep.kind == "per_dmax":
        p_d = sweep.fixed_power_w if sweep.fixed_power_w is not None else radio.do_power_grid_w[-1]
        x = np.asarray(sweep.d_max_grid_s)
        s_go = gains["g_gg"] * p_g / (noise + gains["g_gd"] * p_d)
        cap = np.log2(1.0 + s_go)
        disp = np.sqrt(1.0 - 1.0 / (1.0 + s_go) ** 2)
        s_do = gains["g_dd"] * p_d / (noise + gains["g_dg"] * p_g)
        mean_rd = float(np.mean(w_hz * np.log2(1.0 + s_do)))
        cost_val = metrics_mod.goal_cost(mean_rd, rd_ref)
        out = []
        for k, th in enumerate(theta_ths):
            eff = np.empty((pers.size, x.size))
            eff_t = np.empty_like(eff)
            eff_d = np.empty_like(eff)
            for i in range(pers.size):
                rate = np.maximum(w_hz * (cap - backoff[i] * disp), 0.0)
                with np.errstate(divide="ignore"):
                    d_tot = np.where(rate > 0, batch_bits / rate, np.inf) + comp
                for j, dmax in enumerate(x):
                    delay_ok = d_tot <= dmax
                    eff[i, j] = np.mean(theta_ok[k, i] & delay_ok)
                    eff_t[i, j] = np.mean(theta_ok[k, i])
                    eff_d[i, j] = np.mean(delay_ok)
            out.append(HeatmapData(
                kind="per_dmax", theta_th=float(th), per_values=pers, x_values=x,
                x_kind="d_max_s", effectiveness=eff, eff_theta=eff_t, eff_delay=eff_d,
                mean_rd_bps=np.full_like(eff, mean_rd), cost=np.full_like(eff, cost_val),
                contour_thresholds=tuple(sweep.contour_thresholds),
                rd_max_avg_bps=rd_ref, fixed_power_w=float(p_d),
            ))
        return out

    # per_power
    powers = np.asarray(sweep.power_grid_w if sweep.power_grid_w else radio.do_power_grid_w)
    d_max = cfg.requirements.d_max_s
    eff = np.zeros((len(theta_ths), pers.size, powers.size))
    eff_d = np.zeros((pers.size, powers.size))
    mean_rd = np.zeros(powers.size)
    for j, p_d in enumerate(powers):
        s_go = gains["g_gg"] * p_g / (noise + gains["g_gd"] * p_d)
        cap = np.log2(1.0 + s_go)
        disp = np.sqrt(1.0 - 1.0 / (1.0 + s_go) ** 2)
        s_do = gains["g_dd"] * p_d / (noise + gains["g_dg"] * p_g)
        mean_rd[j] = np.mean(w_hz * np.log2(1.0 + s_do))
        for i in range(pers.size):
            rate = np.maximum(w_hz * (cap - backoff[i] * disp), 0.0)
            with np.errstate(divide="ignore"):
                d_tot = np.where(rate > 0, batch_bits / rate, np.inf) + comp
            delay_ok = d_tot <= d_max
            eff_d[i, j] = np.mean(delay_ok)
            for k in range(len(theta_ths)):
                eff[k, i, j] = np.mean(theta_ok[k, i] & delay_ok)
    cost_row = np.array([metrics_mod.goal_cost(m, rd_ref) for m in mean_rd])
    out = []
    for k, th in enumerate(theta_ths):
        eff_t = np.repeat(np.mean(theta_ok[k], axis=1)[:, None], powers.size, axis=1)
        out.append(HeatmapData(
            kind="per_power", theta_th=float(th), per_values=pers, x_values=powers,
            x_kind="p_d_w", effectiveness=eff[k], eff_theta=eff_t,
            eff_delay=eff_d.copy(), mean_rd_bps=np.repeat(mean_rd[None, :], pers.size, axis=0),
            cost=np.repeat(cost_row[None, :], pers.size, axis=0),
            contour_thresholds=tuple(sweep.contour_thresholds),
            rd_max_avg_bps=rd_ref, d_max_s=float(d_max),
        ))
    return out


def run_bandwidth_split(cfg: ScenarioConfig) -> SplitResult:
    """Orthogonal-sharing baseline.

    Each candidate hands the GO user an exclusive subband (adaptive PER, no
    interference in either direction) and the DO user the rest at full power;
    the minimum-cost candidate meeting the effectiveness target wins. Cost is
    measured against the full-band interference-free DO rate.
    """
    if cfg.split is None:
        raise ValueError("run_bandwidth_split needs cfg.split")
    radio = cfg.radio
    fractions = np.asarray(cfg.split.fractions)
    w_full = radio.bandwidth_hz
    p_max = radio.do_power_grid_w[-1]
    gains = rf.sample_channels(cfg.geometry, cfg.fading, derive_stream(cfg.seed, 1), cfg.slots)
    base_model = compute_mod.set_offset(cfg.compute, 0.0)
    comp = compute_mod.sample_comp_delays(base_model, derive_stream(cfg.seed, 2), cfg.slots)
    comp = comp + _offset_per_slot(cfg)
    rd_ref = _reference_rd_avg(cfg, gains)
    solver = cfg.solver if cfg.solver.mode in ("approximate", "fixed_per") else replace(cfg.solver, mode="approximate")
    table = None
    if solver.mode != "genie":
        table = _build_table(cfg, cfg.requirements.theta_th, 0)

    eff = np.empty(fractions.size)
    cost = np.empty(fractions.size)
    for k, frac in enumerate(fractions):
        w_g = frac * w_full
        radio_k = replace(radio, bandwidth_hz=w_g, do_power_grid_w=(0.0,))
        cfg_k = replace(cfg, mode="adaptive", radio=radio_k, solver=solver)
        trace = _adaptive_core(
            cfg_k, gains, comp,
            derive_stream(cfg.seed, 8, k, 0), derive_stream(cfg.seed, 8, k, 1),
            table, lambda th, j, _k=k: _build_table(cfg, th, 100 * (_k + 1) + j),
            rd_max_avg_bps=rd_ref,
        )
        eff[k] = trace.effectiveness()
        w_d = w_full - w_g
        if w_d <= 0:
            rd_split = 0.0
        else:
            noise_d = rf.noise_power(radio.noise_density_dbm_hz, w_d, radio.noise_figure_db)
            rd_split = float(np.mean(w_d * np.log2(1.0 + gains["g_dd"] * p_max / noise_d)))
        cost[k] = metrics_mod.goal_cost(rd_split, rd_ref)

    e_th = cfg.requirements.effectiveness_target
    feasible = eff >= e_th
    best = int(np.flatnonzero(feasible)[np.argmin(cost[feasible])]) if feasible.any() else None
    return SplitResult(
        fractions=fractions, w_g_hz=fractions * w_full, effectiveness=eff, cost=cost,
        rd_max_avg_bps=rd_ref, e_th=e_th, best_index=best,
    )


@dataclass(frozen=True)
class FrontierPoint:
    """Long-run operating point of one (omega, theta_th, mode) run."""

    omega: float
    theta_th: float
    mode: str
    effectiveness: float
    cost: float
    cost_se: float
    avg_rd_bps: float
    final_z: float


@dataclass
class FrontierResult:
    points: list[FrontierPoint]
    rd_max_avg_bps: float
    e_th: float


def run_frontier(cfg: ScenarioConfig) -> FrontierResult:
    """Trace the effectiveness/cost trade-off by sweeping the penalty weight.

    One adaptive run per (quality threshold, solver flavor, omega); flavors
    are the table-driven solver and, when enabled, the genie benchmark that
    sees the realized quality indicator before deciding.
    """
    fr = cfg.frontier
    theta_ths = fr.theta_ths if fr.theta_ths else (cfg.requirements.theta_th,)
    modes = ("approximate", "genie") if fr.include_genie else ("approximate",)
    points: list[FrontierPoint] = []
    rd_ref = math.nan
    for th in theta_ths:
        req = replace(cfg.requirements, theta_th=th)
        for mode in modes:
            for omega in fr.omegas:
                cfg_i = replace(
                    cfg,
                    mode="genie" if mode == "genie" else "adaptive",
                    requirements=req,
                    solver=replace(cfg.solver, mode=mode, omega=omega),
                )
                trace = run_adaptive(cfg_i)
                rd_ref = trace.rd_max_avg_bps
                slot_cost = 1.0 - trace.r_d_bps / trace.rd_max_avg_bps
                points.append(FrontierPoint(
                    omega=float(omega), theta_th=float(th), mode=mode,
                    effectiveness=trace.effectiveness(), cost=trace.cost(),
                    cost_se=float(slot_cost.std() / math.sqrt(slot_cost.size)),
                    avg_rd_bps=trace.avg_rd_bps(), final_z=float(trace.z[-1]),
                ))
    return FrontierResult(points=points, rd_max_avg_bps=rd_ref,
                          e_th=cfg.requirements.effectiveness_target)


def convergence_slot(moving, target: float, tol: float, start: int = 0, end: int | None = None):
    """First index in [start, end) where |moving - target| <= tol, else None."""
    m = np.asarray(moving, dtype=float)
    stop = m.size if end is None else min(end, m.size)
    ok = np.abs(m[start:stop] - target) <= tol
    hits = np.flatnonzero(ok)
    return int(start + hits[0]) if hits.size else None
