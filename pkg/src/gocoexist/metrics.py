"""Goal metrics for the edge-inference uplink.

The receiver runs a classifier on each reconstructed batch; the batch-average
Shannon entropy of the class posteriors (natural log) measures how confused
the classifier is. Quality is summarized by a normalized index

    theta = -(H - H_min) / H_min,

where H_min is the clean-input batch entropy: theta = 0 on clean batches and
decreases as packet losses corrupt the input. A slot meets its goal when
theta clears a threshold AND the total delay (transmission + computing) meets
the deadline. Instead of running a real classifier, a pluggable oracle maps
the realized fraction of errored packets to a random batch entropy.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

_SUM_TOL = 1e-9


def entropy(probs) -> float:
    """Shannon entropy in nats of one probability vector; 0*ln 0 := 0."""
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("entropy expects a non-empty 1-D probability vector")
    if np.any(p < 0):
        raise ValueError("probabilities must be non-negative")
    total = float(p.sum())
    if abs(total - 1.0) > _SUM_TOL:
        raise ValueError(f"probabilities sum to {total!r}, expected 1 within {_SUM_TOL}")
    nz = p[p > 0]
    return float(-(nz * np.log(nz)).sum())


def batch_avg_entropy(entropies) -> float:
    """Arithmetic mean entropy over the patterns of one batch."""
    h = np.asarray(entropies, dtype=float)
    if h.size == 0:
        raise ValueError("batch_avg_entropy of an empty batch is undefined")
    return float(h.mean())


def nrei(h: float, h_min: float) -> float:
    """Normalized relative entropy index, -(h - h_min) / h_min."""
    if h_min <= 0:
        raise ValueError(f"h_min must be positive, got {h_min}")
    return -(h - h_min) / h_min


def sample_packet_errors(n_packets: int, per: float, rng: np.random.Generator) -> int:
    """Number of errored packets in a batch at packet error rate `per`."""
    if n_packets < 0:
        raise ValueError("n_packets must be non-negative")
    if not (0.0 <= per <= 1.0):
        raise ValueError(f"per must lie in [0, 1], got {per}")
    return int(rng.binomial(n_packets, per))


@dataclass(frozen=True)
class ParametricEntropyOracle:
    """Closed-form stand-in for a classifier's entropy response.

    Mean batch entropy grows from the clean floor as
    h_min * (1 + gain * f**shape) in the errored-packet fraction f, plus
    Gaussian observation noise, clipped to the valid range [0, ln(labels)].
    The clip keeps the mean response non-decreasing in f. Defaults are
    synthetic calibration values, flat below f ~ 1e-3 and degrading beyond.
    """

    h_min_nats: float = 0.3
    labels: int = 10
    gain: float = 30.0
    shape: float = 1.0
    noise_std_nats: float = 0.075

    def __post_init__(self):
        if self.labels < 2:
            raise ValueError("labels must be >= 2")
        if not (0.0 < self.h_min_nats <= math.log(self.labels)):
            raise ValueError(f"h_min_nats must lie in (0, ln(labels)], got {self.h_min_nats}")
        if self.gain < 0 or self.shape <= 0 or self.noise_std_nats < 0:
            raise ValueError("gain must be >= 0, shape > 0, noise_std_nats >= 0")

    @property
    def h_max_nats(self) -> float:
        return math.log(self.labels)

    def draw_entropy(self, error_fraction, rng: np.random.Generator) -> np.ndarray:
        f = np.asarray(error_fraction, dtype=float)
        mean = self.h_min_nats * (1.0 + self.gain * np.power(f, self.shape))
        noise = self.noise_std_nats * rng.standard_normal(f.shape) if self.noise_std_nats > 0 else 0.0
        return np.clip(mean + noise, 0.0, self.h_max_nats)


class TableEntropyOracle:
    """Entropy response backed by per-error-level empirical samples.

    Levels are errored-packet fractions; each carries a sorted sample set (or
    a 5-point quantile sketch expanded to a piecewise-linear inverse CDF).
    A draw at fraction f interpolates between the bracketing levels at a
    common quantile rank, which keeps the mean response monotone whenever the
    level means are monotone; that monotonicity is validated on construction.
    """

    def __init__(self, levels, samples_per_level, labels: int = 10, h_min_nats: float | None = None):
        levels = np.asarray(levels, dtype=float)
        if levels.ndim != 1 or levels.size == 0:
            raise ValueError("table oracle needs at least one error level")
        if np.any(np.diff(levels) <= 0):
            raise ValueError("error levels must be strictly increasing")
        self.labels = int(labels)
        self.h_max_nats = math.log(self.labels)
        sorted_sets = []
        for lev, samples in zip(levels, samples_per_level):
            s = np.sort(np.asarray(samples, dtype=float))
            if s.size == 0:
                raise ValueError(f"level {lev}: empty sample set")
            if s[0] < 0 or s[-1] > self.h_max_nats + 1e-12:
                raise ValueError(f"level {lev}: entropies outside [0, ln(labels)]")
            sorted_sets.append(s)
        means = np.array([s.mean() for s in sorted_sets])
        if np.any(np.diff(means) < -1e-9):
            raise ValueError("mean entropy must be non-decreasing across error levels")
        self.levels = levels
        self.samples = sorted_sets
        self.h_min_nats = float(h_min_nats) if h_min_nats is not None else float(means[0])
        if not (0.0 < self.h_min_nats <= self.h_max_nats):
            raise ValueError("h_min_nats must lie in (0, ln(labels)]")

    @staticmethod
    def _rank_value(sorted_samples: np.ndarray, u: np.ndarray) -> np.ndarray:
        n = sorted_samples.size
        if n == 1:
            return np.full_like(u, sorted_samples[0])
        pos = u * (n - 1)
        i = np.minimum(pos.astype(int), n - 2)
        w = pos - i
        return sorted_samples[i] * (1.0 - w) + sorted_samples[i + 1] * w

    def draw_entropy(self, error_fraction, rng: np.random.Generator) -> np.ndarray:
        f = np.asarray(error_fraction, dtype=float)
        u = rng.random(f.shape)
        if self.levels.size == 1:
            return np.clip(self._rank_value(self.samples[0], np.atleast_1d(u)).reshape(f.shape), 0.0, self.h_max_nats)
        fc = np.atleast_1d(np.clip(f, self.levels[0], self.levels[-1]))
        uu = np.atleast_1d(u)
        hi = np.clip(np.searchsorted(self.levels, fc, side="left"), 1, self.levels.size - 1)
        lo = hi - 1
        out = np.empty_like(fc)
        w = (fc - self.levels[lo]) / (self.levels[hi] - self.levels[lo])
        # evaluate per bracketing level pair so each sorted set is reused
        for b in np.unique(lo):
            mask = lo == b
            v_lo = self._rank_value(self.samples[b], uu[mask])
            v_hi = self._rank_value(self.samples[b + 1], uu[mask])
            out[mask] = v_lo * (1.0 - w[mask]) + v_hi * w[mask]
        return np.clip(out, 0.0, self.h_max_nats).reshape(f.shape)


EntropyOracle = ParametricEntropyOracle | TableEntropyOracle


def oracle_theta(oracle: EntropyOracle, error_fraction, rng: np.random.Generator):
    """Draw the quality index theta at a realized errored-packet fraction."""
    f = np.asarray(error_fraction, dtype=float)
    h = oracle.draw_entropy(f, rng)
    theta = -(h - oracle.h_min_nats) / oracle.h_min_nats
    return float(theta) if f.ndim == 0 else theta


def load_oracle_table_csv(path, labels: int = 10, h_min_nats: float | None = None) -> TableEntropyOracle:
    """Read an oracle table CSV.

    Two layouts are accepted, distinguished by header: raw samples
    (per_level,sample_entropy; many rows per level) or quantile sketches
    (per_level,q05,q25,q50,q75,q95; one row per level).
    """
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise ValueError(f"{path}: empty oracle table")
    header = [c.strip() for c in rows[0]]
    if header == ["per_level", "sample_entropy"]:
        by_level: dict[float, list[float]] = {}
        for i, row in enumerate(rows[1:], start=2):
            if len(row) != 2:
                raise ValueError(f"{path}: row {i} has {len(row)} fields, expected 2")
            lev, h = float(row[0]), float(row[1])
            by_level.setdefault(lev, []).append(h)
        levels = sorted(by_level)
        return TableEntropyOracle(levels, [by_level[l] for l in levels], labels, h_min_nats)
    if header == ["per_level", "q05", "q25", "q50", "q75", "q95"]:
        levels, sets = [], []
        for i, row in enumerate(rows[1:], start=2):
            if len(row) != 6:
                raise ValueError(f"{path}: row {i} has {len(row)} fields, expected 6")
            vals = [float(v) for v in row]
            levels.append(vals[0])
            q = vals[1:]
            if any(b < a for a, b in zip(q, q[1:])):
                raise ValueError(f"{path}: row {i}: quantiles must be non-decreasing")
            sets.append(q)
        order = np.argsort(levels)
        return TableEntropyOracle(
            [levels[i] for i in order], [sets[i] for i in order], labels, h_min_nats
        )
    raise ValueError(
        f"{path}: expected header per_level,sample_entropy or per_level,q05,q25,q50,q75,q95"
    )


@dataclass(frozen=True)
class GoalRequirements:
    """Per-slot goal target and the long-run effectiveness constraint."""

    theta_th: float = -0.4
    d_max_s: float = 0.045
    effectiveness_target: float = 0.8

    def __post_init__(self):
        if self.d_max_s <= 0:
            raise ValueError(f"d_max_s must be positive, got {self.d_max_s}")
        if not (0.0 < self.effectiveness_target < 1.0):
            raise ValueError(
                f"effectiveness_target must lie in (0, 1), got {self.effectiveness_target}"
            )


@dataclass(frozen=True)
class GoalOutcome:
    """Realized per-slot outcome: quality index, delays, success flag."""

    theta: float
    d_tx_s: float
    d_comp_s: float
    success: bool

    @property
    def d_tot_s(self) -> float:
        return self.d_tx_s + self.d_comp_s


def goal_success(theta: float, theta_th: float, d_tot_s: float, d_max_s: float) -> bool:
    """A slot succeeds iff quality clears the threshold and the deadline holds."""
    return bool(theta >= theta_th and d_tot_s <= d_max_s)


def effectiveness(successes) -> float:
    """Fraction of successful slots."""
    s = np.asarray(successes)
    if s.size == 0:
        raise ValueError("effectiveness of an empty run is undefined")
    return float(np.mean(s != 0))


def goal_cost(rd_avg_bps: float, rd_max_avg_bps: float) -> float:
    """Relative rate the data-oriented link gives up to protect the goal link.

    (rd_max_avg - rd_avg) / rd_max_avg, clamped into [0, 1] so that Monte
    Carlo jitter cannot produce a tiny negative cost.
    """
    if rd_max_avg_bps <= 0:
        raise ValueError(f"rd_max_avg_bps must be positive, got {rd_max_avg_bps}")
    return float(np.clip((rd_max_avg_bps - rd_avg_bps) / rd_max_avg_bps, 0.0, 1.0))
