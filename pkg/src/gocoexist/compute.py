"""Inference-side computing delay: empirical histograms and parametric draws.

The edge server's per-batch computing time is modeled as an i.i.d. draw from
either a binned empirical distribution (bin edges in seconds plus bin
probabilities, uniform within each bin) or a small set of parametric
families. A non-negative additive offset shifts every draw; replacing the
offset models a compute-load change at runtime. Draws never depend on the
radio decision of the slot.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from importlib import resources

import numpy as np

_PROB_TOL = 1e-9
PARAMETRIC_FAMILIES = ("constant", "uniform", "lognormal", "gamma")


@dataclass(frozen=True)
class EmpiricalHistogram:
    """Binned delay distribution: P(delay in [low_i, high_i)) = prob_i."""

    bin_low_s: tuple[float, ...]
    bin_high_s: tuple[float, ...]
    probs: tuple[float, ...]

    def __post_init__(self):
        lows = tuple(float(x) for x in self.bin_low_s)
        highs = tuple(float(x) for x in self.bin_high_s)
        probs = tuple(float(x) for x in self.probs)
        object.__setattr__(self, "bin_low_s", lows)
        object.__setattr__(self, "bin_high_s", highs)
        object.__setattr__(self, "probs", probs)
        if not (len(lows) == len(highs) == len(probs)) or len(lows) == 0:
            raise ValueError("histogram needs equal-length, non-empty bin and prob lists")
        for lo, hi in zip(lows, highs):
            if lo < 0 or hi < lo:
                raise ValueError(f"invalid histogram bin [{lo}, {hi}]")
        if any(p < 0 for p in probs):
            raise ValueError("histogram probabilities must be non-negative")
        if abs(sum(probs) - 1.0) > _PROB_TOL:
            raise ValueError(f"histogram probabilities sum to {sum(probs)!r}, expected 1")

    def mean_s(self) -> float:
        return sum(p * (lo + hi) / 2.0 for lo, hi, p in zip(self.bin_low_s, self.bin_high_s, self.probs))


@dataclass(frozen=True)
class ParametricDelay:
    """Parametric delay family with parameters in seconds."""

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in PARAMETRIC_FAMILIES:
            raise ValueError(f"unknown delay family {self.family!r}, expected one of {PARAMETRIC_FAMILIES}")
        p = dict(self.params)
        object.__setattr__(self, "params", p)
        if self.family == "constant":
            if p.get("value_s", -1.0) < 0:
                raise ValueError("constant delay needs value_s >= 0")
        elif self.family == "uniform":
            lo, hi = p.get("low_s", -1.0), p.get("high_s", -1.0)
            if lo < 0 or hi < lo:
                raise ValueError("uniform delay needs 0 <= low_s <= high_s")
        elif self.family == "lognormal":
            if p.get("median_s", 0.0) <= 0 or p.get("sigma_log", -1.0) < 0:
                raise ValueError("lognormal delay needs median_s > 0 and sigma_log >= 0")
        elif self.family == "gamma":
            if p.get("shape", 0.0) <= 0 or p.get("scale_s", 0.0) <= 0:
                raise ValueError("gamma delay needs shape > 0 and scale_s > 0")


@dataclass(frozen=True)
class ComputeDelayModel:
    """A delay distribution plus a replaceable non-negative offset."""

    distribution: EmpiricalHistogram | ParametricDelay
    offset_s: float = 0.0

    def __post_init__(self):
        if self.offset_s < 0:
            raise ValueError(f"offset_s must be non-negative, got {self.offset_s}")


def set_offset(model: ComputeDelayModel, offset_s: float) -> ComputeDelayModel:
    """Return a model whose offset IS offset_s (replacement, not accumulation)."""
    return replace(model, offset_s=offset_s)


def sample_comp_delays(model: ComputeDelayModel, rng: np.random.Generator, size: int) -> np.ndarray:
    """Vectorized draw of `size` i.i.d. computing delays in seconds."""
    dist = model.distribution
    if isinstance(dist, EmpiricalHistogram):
        lows = np.asarray(dist.bin_low_s)
        highs = np.asarray(dist.bin_high_s)
        idx = rng.choice(len(lows), size=size, p=np.asarray(dist.probs))
        u = rng.random(size)
        base = lows[idx] + u * (highs[idx] - lows[idx])
    else:
        p = dist.params
        if dist.family == "constant":
            base = np.full(size, p["value_s"])
        elif dist.family == "uniform":
            base = rng.uniform(p["low_s"], p["high_s"], size)
        elif dist.family == "lognormal":
            base = rng.lognormal(math.log(p["median_s"]), p["sigma_log"], size)
        else:  # gamma
            base = rng.gamma(p["shape"], p["scale_s"], size)
    return base + model.offset_s


def sample_comp_delay(model: ComputeDelayModel, rng: np.random.Generator) -> float:
    """Draw one computing delay in seconds (base draw plus offset)."""
    return float(sample_comp_delays(model, rng, 1)[0])


def histogram_cdf(hist: EmpiricalHistogram, x: np.ndarray) -> np.ndarray:
    """Exact CDF of the piecewise-uniform histogram distribution."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for lo, hi, p in zip(hist.bin_low_s, hist.bin_high_s, hist.probs):
        if hi > lo:
            out += p * np.clip((x - lo) / (hi - lo), 0.0, 1.0)
        else:
            out += p * (x >= lo)
    return out


def load_histogram_csv(path) -> EmpiricalHistogram:
    """Read a histogram CSV with header bin_low_s,bin_high_s,prob."""
    with open(path, newline="") as fh:
        return _parse_histogram(csv.reader(fh), str(path))


def _parse_histogram(rows, origin: str) -> EmpiricalHistogram:
    rows = list(rows)
    if not rows or [c.strip() for c in rows[0]] != ["bin_low_s", "bin_high_s", "prob"]:
        raise ValueError(f"{origin}: expected header bin_low_s,bin_high_s,prob")
    lows, highs, probs = [], [], []
    for i, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise ValueError(f"{origin}: row {i} has {len(row)} fields, expected 3")
        try:
            lo, hi, p = (float(v) for v in row)
        except ValueError as exc:
            raise ValueError(f"{origin}: row {i} is not numeric: {exc}") from None
        lows.append(lo)
        highs.append(hi)
        probs.append(p)
    return EmpiricalHistogram(tuple(lows), tuple(highs), tuple(probs))


def default_compute_model() -> ComputeDelayModel:
    """Synthetic default histogram shipped with the package.

    Calibrated so that deadline budgets of a few tens of milliseconds are
    binding but satisfiable once the transmission delay is added. It stands
    in for profiled hardware numbers and is labelled as such in manifests.
    """
    ref = resources.files("gocoexist.data").joinpath("default_compute_delay.csv")
    with ref.open(newline="") as fh:
        hist = _parse_histogram(csv.reader(fh), "default_compute_delay.csv")
    return ComputeDelayModel(distribution=hist)
