"""Per-slot controller: virtual queue, success table, and grid solver.

A virtual queue turns the long-run effectiveness constraint into per-slot
pressure: it grows by the target on every slot and drains by one on success,
so mean-rate stability of the queue is equivalent to meeting the constraint.
Each slot the controller minimizes a drift-plus-penalty objective

    -z * p_succ(gamma) * 1{deadline met} - omega * r_d(p_d)

over the finite packet-error-rate grid and the transmit-power grid of the
data-oriented user. The quality indicator, unknown at decision time, is
replaced by its precomputed expectation per grid PER (the success table); a
genie variant substitutes the realized indicator instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .metrics import EntropyOracle, oracle_theta
from .rf import ChannelRealization, RadioConfig, noise_power, q_inv

SOLVER_MODES = ("approximate", "genie", "fixed_per", "fixed_both")
LN2 = math.log(2.0)


@dataclass(frozen=True)
class VirtualQueueState:
    """Backlog of unmet effectiveness; never negative."""

    z: float = 0.0

    def __post_init__(self):
        if not (self.z >= 0.0):
            raise ValueError(f"z must be >= 0, got {self.z}")


def update_queue(z: float, success, e_th: float) -> float:
    """One queue step: z' = max(0, z - success + e_th)."""
    if z < 0:
        raise ValueError("z must be >= 0")
    if not (0.0 < e_th < 1.0):
        raise ValueError(f"e_th must lie in (0, 1), got {e_th}")
    return max(0.0, z - float(bool(success)) + e_th)


class SuccessProbTable:
    """Estimated probability that quality clears its threshold, per grid PER.

    Values live in [0, 1] and are non-increasing in the PER (higher packet
    loss can only hurt quality on average); estimates are projected onto that
    shape with a pool-adjacent-violators pass.
    """

    def __init__(self, per_levels, p_success, n_samples, theta_th: float):
        levels = np.asarray(per_levels, dtype=float)
        probs = np.asarray(p_success, dtype=float)
        counts = np.asarray(n_samples, dtype=int)
        if levels.ndim != 1 or levels.size == 0:
            raise ValueError("table needs at least one PER level")
        if probs.shape != levels.shape or counts.shape != levels.shape:
            raise ValueError("per_levels, p_success and n_samples must align")
        if np.any(np.diff(levels) <= 0):
            raise ValueError("PER levels must be strictly increasing")
        if np.any((probs < 0) | (probs > 1)):
            raise ValueError("success probabilities must lie in [0, 1]")
        if np.any(np.diff(probs) > 1e-12):
            raise ValueError("success probabilities must be non-increasing in PER")
        self.per_levels = levels
        self.p_success = probs
        self.n_samples = counts
        self.theta_th = float(theta_th)
        # online re-estimation buffers (inactive until fed)
        self._online_success = np.zeros(levels.size)
        self._online_total = np.zeros(levels.size, dtype=int)

    def lookup(self, per: float) -> float:
        idx = int(np.argmin(np.abs(self.per_levels - per)))
        if not math.isclose(self.per_levels[idx], per, rel_tol=1e-9, abs_tol=0.0):
            raise ValueError(f"PER {per!r} is not a grid level of this table")
        return float(self.p_success[idx])

    def record_outcome(self, per_index: int, theta_ok: bool) -> None:
        """Feed one realized quality indicator for online re-estimation."""
        self._online_success[per_index] += bool(theta_ok)
        self._online_total[per_index] += 1

    def reestimated(self) -> "SuccessProbTable":
        """Blend offline and online counts into a fresh, reprojected table."""
        total = self.n_samples + self._online_total
        succ = self.p_success * self.n_samples + self._online_success
        with np.errstate(invalid="ignore"):
            raw = np.where(total > 0, succ / np.maximum(total, 1), self.p_success)
        return SuccessProbTable(self.per_levels, isotonic_non_increasing(raw), total, self.theta_th)


def isotonic_non_increasing(values) -> np.ndarray:
    """Project a sequence onto non-increasing shape (equal-weight PAVA)."""
    v = -np.asarray(values, dtype=float)
    # pool adjacent violators for the non-decreasing problem on -values
    means = []
    weights = []
    for x in v:
        means.append(x)
        weights.append(1.0)
        while len(means) > 1 and means[-2] > means[-1]:
            m2, w2 = means.pop(), weights.pop()
            m1, w1 = means.pop(), weights.pop()
            means.append((m1 * w1 + m2 * w2) / (w1 + w2))
            weights.append(w1 + w2)
    out = np.repeat(means, np.asarray(weights, dtype=int))
    return -out


def build_success_table(
    oracle: EntropyOracle,
    per_grid,
    theta_th: float,
    n_packets: int,
    n_validation: int,
    rng: np.random.Generator,
) -> SuccessProbTable:
    """Estimate P(theta >= theta_th) per grid PER on synthetic validation batches.

    For each PER level, draws `n_validation` batches of packet errors, pushes
    the realized error fractions through the entropy oracle, and counts how
    often the quality index clears the threshold; the raw frequencies are
    then projected to be non-increasing in PER.
    """
    if n_validation < 1:
        raise ValueError("n_validation must be >= 1")
    if n_packets < 1:
        raise ValueError("n_packets must be >= 1")
    levels = np.asarray(per_grid, dtype=float)
    raw = np.empty(levels.size)
    for i, g in enumerate(levels):
        errs = rng.binomial(n_packets, g, size=n_validation)
        theta = oracle_theta(oracle, errs / n_packets, rng)
        raw[i] = np.mean(theta >= theta_th)
    return SuccessProbTable(
        levels, isotonic_non_increasing(raw), np.full(levels.size, n_validation), theta_th
    )


@dataclass(frozen=True)
class SolverConfig:
    """Penalty weight and decision mode of the per-slot solver.

    omega weighs the data-oriented rate (units: 1 / (bit/s)); mode selects
    how the quality indicator is handled and which grid axes stay free.
    """

    omega: float = 1e-9
    mode: str = "approximate"
    fixed_per: float | None = None
    fixed_power_w: float | None = None
    validation_batches: int = 10000
    online_reestimation: bool = False
    reestimate_every: int = 1000

    def __post_init__(self):
        if self.omega < 0:
            raise ValueError(f"omega must be >= 0, got {self.omega}")
        if self.mode not in SOLVER_MODES:
            raise ValueError(f"mode must be one of {SOLVER_MODES}, got {self.mode!r}")
        if self.mode in ("fixed_per", "fixed_both") and self.fixed_per is None:
            raise ValueError(f"mode {self.mode!r} requires fixed_per")
        if self.mode == "fixed_both" and self.fixed_power_w is None:
            raise ValueError("mode 'fixed_both' requires fixed_power_w")
        if self.validation_batches < 1:
            raise ValueError("validation_batches must be >= 1")
        if self.reestimate_every < 1:
            raise ValueError("reestimate_every must be >= 1")


@dataclass(frozen=True)
class SlotDecision:
    """Chosen grid cell for one slot."""

    per: float
    p_d_w: float
    per_index: int
    p_d_index: int
    objective: float


def dpp_objective(z: float, p_succ: float, delay_ok, r_d_bps: float, omega: float) -> float:
    """Drift-plus-penalty value of one candidate decision."""
    return -z * p_succ * float(bool(delay_ok)) - omega * r_d_bps


def _grid_index(grid: np.ndarray, value: float, name: str) -> int:
    idx = int(np.argmin(np.abs(grid - value)))
    if not math.isclose(grid[idx], value, rel_tol=1e-9, abs_tol=1e-15):
        raise ValueError(f"{name}={value!r} is not on the configured grid")
    return idx


class GridEvaluator:
    """Precomputed per-run quantities for fast slot solving.

    Holds the PER and power grids, the per-PER rate backoff coefficients,
    the success-table column, and the static radio constants, so each slot
    only costs a handful of vectorized array operations over the grid.
    """

    def __init__(self, radio: RadioConfig, table: SuccessProbTable | None, solver: SolverConfig):
        self.radio = radio
        self.solver = solver
        self.noise_w = noise_power(
            radio.noise_density_dbm_hz, radio.bandwidth_hz, radio.noise_figure_db
        )
        per_grid = np.asarray(radio.per_grid)
        power_grid = np.asarray(radio.do_power_grid_w)
        if solver.mode in ("fixed_per", "fixed_both"):
            self.per_indices = np.array([_grid_index(per_grid, solver.fixed_per, "fixed_per")])
        else:
            self.per_indices = np.arange(per_grid.size)
        if solver.mode == "fixed_both":
            self.power_indices = np.array(
                [_grid_index(power_grid, solver.fixed_power_w, "fixed_power_w")]
            )
        else:
            self.power_indices = np.arange(power_grid.size)
        self.pers = per_grid[self.per_indices]
        self.powers = power_grid[self.power_indices]
        # finite-blocklength backoff per PER, in bit/use: sqrt(V/n)*Qinv/ln2
        self.backoff = q_inv(self.pers) / (LN2 * math.sqrt(radio.blocklength))
        if table is not None:
            self.p_succ = np.array([table.lookup(g) for g in self.pers])
        else:
            self.p_succ = None
        self.batch_bits = float(radio.batch_bits)

    def rate_matrix_go(self, ch: ChannelRealization) -> np.ndarray:
        """GO uplink rate for every (per, p_d) grid cell, clamped at zero."""
        s = ch.g_gg * self.radio.go_tx_power_w / (self.noise_w + ch.g_gd * self.powers)
        cap = np.log2(1.0 + s)
        disp = np.sqrt(1.0 - 1.0 / (1.0 + s) ** 2)
        rates = self.radio.bandwidth_hz * (cap[None, :] - self.backoff[:, None] * disp[None, :])
        return np.maximum(rates, 0.0)

    def rates_do(self, ch: ChannelRealization) -> np.ndarray:
        """DO uplink rate per power-grid point under GO interference."""
        s = ch.g_dd * self.powers / (self.noise_w + ch.g_dg * self.radio.go_tx_power_w)
        return self.radio.bandwidth_hz * np.log2(1.0 + s)

    def _local_indices(self, decision: "SlotDecision") -> tuple[int, int]:
        i = int(np.searchsorted(self.per_indices, decision.per_index))
        j = int(np.searchsorted(self.power_indices, decision.p_d_index))
        return i, j

    def rate_at(self, ch: ChannelRealization, decision: "SlotDecision") -> float:
        """GO uplink rate of one chosen cell (same arithmetic as the matrix)."""
        i, j = self._local_indices(decision)
        s = ch.g_gg * self.radio.go_tx_power_w / (self.noise_w + ch.g_gd * self.powers[j])
        cap = np.log2(1.0 + s)
        disp = np.sqrt(1.0 - 1.0 / (1.0 + s) ** 2)
        return float(max(self.radio.bandwidth_hz * (cap - self.backoff[i] * disp), 0.0))

    def rate_do_at(self, ch: ChannelRealization, decision: "SlotDecision") -> float:
        """DO uplink rate at one chosen power point."""
        _, j = self._local_indices(decision)
        s = ch.g_dd * self.powers[j] / (self.noise_w + ch.g_dg * self.radio.go_tx_power_w)
        return float(self.radio.bandwidth_hz * np.log2(1.0 + s))

    def solve(
        self,
        z: float,
        ch: ChannelRealization,
        d_comp_s: float,
        d_max_s: float,
        quality_weight: np.ndarray,
    ) -> SlotDecision:
        """Minimize the objective by full enumeration over the active grid.

        quality_weight carries p_succ per PER (approximate mode) or the
        realized 0/1 indicator (genie mode). Ties resolve to the first cell
        in row-major order: PER ascending outer, power ascending inner.
        """
        rates_go = self.rate_matrix_go(ch)
        r_d = self.rates_do(ch)
        slack = d_max_s - d_comp_s
        if slack > 0:
            delay_ok = rates_go * slack >= self.batch_bits
        else:
            delay_ok = np.zeros_like(rates_go, dtype=bool)
        obj = -z * quality_weight[:, None] * delay_ok - self.solver.omega * r_d[None, :]
        flat = int(np.argmin(obj))
        i, j = np.unravel_index(flat, obj.shape)
        return SlotDecision(
            per=float(self.pers[i]),
            p_d_w=float(self.powers[j]),
            per_index=int(self.per_indices[i]),
            p_d_index=int(self.power_indices[j]),
            objective=float(obj[i, j]),
        )


def solve_slot(
    z: float,
    ch: ChannelRealization,
    d_comp_s: float,
    table: SuccessProbTable | None,
    solver: SolverConfig,
    radio: RadioConfig,
    d_max_s: float,
    realized_theta_ok=None,
) -> SlotDecision:
    """Solve one slot's decision problem; pure function of its inputs.

    In genie mode `realized_theta_ok` must provide the realized quality
    indicator per entry of the PER grid; in the other modes the success
    table supplies the expected indicator.
    """
    if z < 0:
        raise ValueError("z must be >= 0")
    if solver.mode == "genie":
        if realized_theta_ok is None:
            raise ValueError("genie mode requires realized_theta_ok per PER grid entry")
        ev = GridEvaluator(radio, None, solver)
        weight = np.asarray(realized_theta_ok, dtype=float)[ev.per_indices]
    else:
        if table is None:
            raise ValueError("mode %r requires a success table" % solver.mode)
        ev = GridEvaluator(radio, table, solver)
        weight = ev.p_succ
    return ev.solve(z, ch, d_comp_s, d_max_s, weight)


@dataclass(frozen=True)
class StabilityReport:
    """Mean-rate stability diagnostic of a queue trajectory."""

    final_ratio: float
    peak_ratio_after_burnin: float
    stable: bool
    tolerance: float


def theoretical_bound_check(z_history, e_th: float, tolerance: float = 0.01) -> StabilityReport:
    """Check Z_t / t decay of a queue trajectory.

    The long-run effectiveness constraint is met iff the queue is mean-rate
    stable, i.e. Z_T / T -> 0; the report flags whether the final ratio is
    below the tolerance and how large the ratio stayed after a 10% burn-in.
    """
    z = np.asarray(z_history, dtype=float)
    if z.size == 0:
        raise ValueError("z_history must be non-empty")
    if not (0.0 < e_th < 1.0):
        raise ValueError("e_th must lie in (0, 1)")
    t = np.arange(1, z.size + 1, dtype=float)
    ratio = z / t
    burn = z.size // 10
    return StabilityReport(
        final_ratio=float(ratio[-1]),
        peak_ratio_after_burnin=float(ratio[burn:].max()),
        stable=bool(ratio[-1] < tolerance),
        tolerance=tolerance,
    )
