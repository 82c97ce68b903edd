"""JSON configuration: parsing with dotted-key diagnostics, presets, emission.

A config file is a JSON object with keyed sections (run, geometry, fading,
radio, compute_delay, oracle, requirements, solver, events, sweep, split,
frontier). Every key is optional; omitted keys take the documented defaults,
unknown keys are rejected by their dotted path. `emit_config` produces a
fully resolved dict, and parse(emit(parse(x))) equals parse(x) at the
emitted-dict level.
"""

from __future__ import annotations

import json
import os
from typing import Any

import numpy as np

from . import compute as compute_mod
from . import metrics as metrics_mod
from . import rf
from .engine import Event, FrontierConfig, GridSweepConfig, ScenarioConfig, SplitConfig
from .optimizer import SolverConfig

SCHEMA_VERSION = 1
ENV_SEED_VAR = "GOCOEXIST_SEED"

_SECTIONS = (
    "schema_version", "run", "geometry", "fading", "radio", "compute_delay",
    "oracle", "requirements", "solver", "events", "sweep", "split", "frontier",
)


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending dotted key."""


def _mapping(path: str, value) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{path} must be an object, got {type(value).__name__}")
    return value


def _reject_unknown(path: str, data: dict, allowed) -> None:
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key {path}.{unknown[0]}")


def _number(path: str, value, *, integer: bool = False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path} must be a number, got {value!r}")
    if integer:
        if isinstance(value, float) and not value.is_integer():
            raise ConfigError(f"{path} must be an integer, got {value!r}")
        return int(value)
    return float(value)


def _bool(path: str, value) -> bool:
    if not isinstance(value, bool):
        raise ConfigError(f"{path} must be a boolean, got {value!r}")
    return value


def _string(path: str, value) -> str:
    if not isinstance(value, str):
        raise ConfigError(f"{path} must be a string, got {value!r}")
    return value


def _num_list(path: str, value) -> tuple[float, ...]:
    if not isinstance(value, (list, tuple)):
        raise ConfigError(f"{path} must be a list of numbers, got {value!r}")
    return tuple(_number(f"{path}[{i}]", v) for i, v in enumerate(value))


def _point(path: str, value) -> tuple[float, float]:
    pts = _num_list(path, value)
    if len(pts) != 2:
        raise ConfigError(f"{path} must be an [x, y] pair")
    return (pts[0], pts[1])


def _build(section: str, ctor, **kwargs):
    """Construct a validated object, re-raising with the section name."""
    try:
        return ctor(**kwargs)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{section}: {exc}") from None


def _parse_geometry(data: dict) -> rf.Geometry:
    _reject_unknown("geometry", data, {
        "ue_go", "ap_go", "ue_do", "ap_do", "antennas",
        "antenna_spacing_wavelengths", "carrier_hz",
    })
    d = rf.Geometry()
    return _build(
        "geometry", rf.Geometry,
        ue_go=_point("geometry.ue_go", data.get("ue_go", list(d.ue_go))),
        ap_go=_point("geometry.ap_go", data.get("ap_go", list(d.ap_go))),
        ue_do=_point("geometry.ue_do", data.get("ue_do", list(d.ue_do))),
        ap_do=_point("geometry.ap_do", data.get("ap_do", list(d.ap_do))),
        antennas=_number("geometry.antennas", data.get("antennas", d.antennas), integer=True),
        antenna_spacing_wavelengths=_number(
            "geometry.antenna_spacing_wavelengths",
            data.get("antenna_spacing_wavelengths", d.antenna_spacing_wavelengths)),
        carrier_hz=_number("geometry.carrier_hz", data.get("carrier_hz", d.carrier_hz)),
    )


def _parse_fading(data: dict) -> rf.FadingParams:
    _reject_unknown("fading", data, {"rician_k", "pathloss_exponent", "reference_distance_m"})
    d = rf.FadingParams()
    return _build(
        "fading", rf.FadingParams,
        rician_k=_number("fading.rician_k", data.get("rician_k", d.rician_k)),
        pathloss_exponent=_number(
            "fading.pathloss_exponent", data.get("pathloss_exponent", d.pathloss_exponent)),
        reference_distance_m=_number(
            "fading.reference_distance_m", data.get("reference_distance_m", d.reference_distance_m)),
    )


def _parse_radio(data: dict) -> rf.RadioConfig:
    _reject_unknown("radio", data, {
        "bandwidth_hz", "noise_density_dbm_hz", "noise_figure_db", "go_tx_power_w",
        "do_power_grid_w", "do_power_max_w", "do_power_points", "per_grid",
        "blocklength", "packet_bits", "pattern_bits", "batch_patterns",
    })
    d = rf.RadioConfig()
    bandwidth = _number("radio.bandwidth_hz", data.get("bandwidth_hz", d.bandwidth_hz))
    if bandwidth <= 0:
        raise ConfigError(f"radio.bandwidth_hz must be positive, got {bandwidth}")
    if "do_power_grid_w" in data and ("do_power_max_w" in data or "do_power_points" in data):
        raise ConfigError(
            "radio.do_power_grid_w conflicts with radio.do_power_max_w/do_power_points")
    if "do_power_grid_w" in data:
        grid = _num_list("radio.do_power_grid_w", data["do_power_grid_w"])
    elif "do_power_max_w" in data or "do_power_points" in data:
        p_max = _number("radio.do_power_max_w", data.get("do_power_max_w", 0.2))
        points = _number("radio.do_power_points", data.get("do_power_points", 500), integer=True)
        if p_max <= 0:
            raise ConfigError(f"radio.do_power_max_w must be positive, got {p_max}")
        if points < 2:
            raise ConfigError(f"radio.do_power_points must be >= 2, got {points}")
        grid = rf._default_power_grid(p_max, points)
    else:
        grid = ()
    return _build(
        "radio", rf.RadioConfig,
        bandwidth_hz=bandwidth,
        noise_density_dbm_hz=_number(
            "radio.noise_density_dbm_hz", data.get("noise_density_dbm_hz", d.noise_density_dbm_hz)),
        noise_figure_db=_number(
            "radio.noise_figure_db", data.get("noise_figure_db", d.noise_figure_db)),
        go_tx_power_w=_number("radio.go_tx_power_w", data.get("go_tx_power_w", d.go_tx_power_w)),
        do_power_grid_w=grid,
        per_grid=tuple(_num_list("radio.per_grid", data.get("per_grid", []))),
        blocklength=_number("radio.blocklength", data.get("blocklength", d.blocklength), integer=True),
        packet_bits=_number("radio.packet_bits", data.get("packet_bits", d.packet_bits), integer=True),
        pattern_bits=_number("radio.pattern_bits", data.get("pattern_bits", d.pattern_bits), integer=True),
        batch_patterns=_number(
            "radio.batch_patterns", data.get("batch_patterns", d.batch_patterns), integer=True),
    )


def _parse_compute(data: dict) -> compute_mod.ComputeDelayModel:
    source = _string("compute_delay.source", data.get("source", "default"))
    offset = _number("compute_delay.offset_s", data.get("offset_s", 0.0))
    if source == "default":
        _reject_unknown("compute_delay", data, {"source", "offset_s"})
        dist = compute_mod.default_compute_model().distribution
    elif source == "csv":
        _reject_unknown("compute_delay", data, {"source", "offset_s", "path"})
        if "path" not in data:
            raise ConfigError("compute_delay.path is required when source is 'csv'")
        dist = compute_mod.load_histogram_csv(_string("compute_delay.path", data["path"]))
    elif source == "histogram":
        _reject_unknown("compute_delay", data,
                        {"source", "offset_s", "bin_low_s", "bin_high_s", "probs"})
        for key in ("bin_low_s", "bin_high_s", "probs"):
            if key not in data:
                raise ConfigError(f"compute_delay.{key} is required when source is 'histogram'")
        dist = _build(
            "compute_delay", compute_mod.EmpiricalHistogram,
            bin_low_s=_num_list("compute_delay.bin_low_s", data["bin_low_s"]),
            bin_high_s=_num_list("compute_delay.bin_high_s", data["bin_high_s"]),
            probs=_num_list("compute_delay.probs", data["probs"]),
        )
    elif source == "parametric":
        _reject_unknown("compute_delay", data, {"source", "offset_s", "family", "params"})
        if "family" not in data:
            raise ConfigError("compute_delay.family is required when source is 'parametric'")
        params = _mapping("compute_delay.params", data.get("params", {}))
        dist = _build(
            "compute_delay", compute_mod.ParametricDelay,
            family=_string("compute_delay.family", data["family"]),
            params={k: _number(f"compute_delay.params.{k}", v) for k, v in params.items()},
        )
    else:
        raise ConfigError(
            f"compute_delay.source must be one of default/csv/histogram/parametric, got {source!r}")
    return _build("compute_delay", compute_mod.ComputeDelayModel,
                  distribution=dist, offset_s=offset)


def _parse_oracle(data: dict):
    kind = _string("oracle.kind", data.get("kind", "parametric"))
    if kind == "parametric":
        _reject_unknown("oracle", data,
                        {"kind", "h_min_nats", "labels", "gain", "shape", "noise_std_nats"})
        d = metrics_mod.ParametricEntropyOracle()
        return _build(
            "oracle", metrics_mod.ParametricEntropyOracle,
            h_min_nats=_number("oracle.h_min_nats", data.get("h_min_nats", d.h_min_nats)),
            labels=_number("oracle.labels", data.get("labels", d.labels), integer=True),
            gain=_number("oracle.gain", data.get("gain", d.gain)),
            shape=_number("oracle.shape", data.get("shape", d.shape)),
            noise_std_nats=_number(
                "oracle.noise_std_nats", data.get("noise_std_nats", d.noise_std_nats)),
        )
    if kind == "table":
        _reject_unknown("oracle", data, {"kind", "path", "labels", "h_min_nats"})
        if "path" not in data:
            raise ConfigError("oracle.path is required when kind is 'table'")
        return _build(
            "oracle", metrics_mod.load_oracle_table_csv,
            path=_string("oracle.path", data["path"]),
            labels=_number("oracle.labels", data.get("labels", 10), integer=True),
            h_min_nats=(None if data.get("h_min_nats") is None
                        else _number("oracle.h_min_nats", data["h_min_nats"])),
        )
    if kind == "table_inline":
        _reject_unknown("oracle", data, {"kind", "levels", "samples", "labels", "h_min_nats"})
        for key in ("levels", "samples"):
            if key not in data:
                raise ConfigError(f"oracle.{key} is required when kind is 'table_inline'")
        if not isinstance(data["samples"], list):
            raise ConfigError("oracle.samples must be a list of sample lists")
        samples = [_num_list(f"oracle.samples[{i}]", s) for i, s in enumerate(data["samples"])]
        return _build(
            "oracle", metrics_mod.TableEntropyOracle,
            levels=_num_list("oracle.levels", data["levels"]),
            samples_per_level=samples,
            labels=_number("oracle.labels", data.get("labels", 10), integer=True),
            h_min_nats=(None if data.get("h_min_nats") is None
                        else _number("oracle.h_min_nats", data["h_min_nats"])),
        )
    raise ConfigError(f"oracle.kind must be one of parametric/table/table_inline, got {kind!r}")


def _parse_requirements(data: dict) -> metrics_mod.GoalRequirements:
    _reject_unknown("requirements", data, {"theta_th", "d_max_s", "effectiveness_target"})
    d = metrics_mod.GoalRequirements()
    return _build(
        "requirements", metrics_mod.GoalRequirements,
        theta_th=_number("requirements.theta_th", data.get("theta_th", d.theta_th)),
        d_max_s=_number("requirements.d_max_s", data.get("d_max_s", d.d_max_s)),
        effectiveness_target=_number(
            "requirements.effectiveness_target",
            data.get("effectiveness_target", d.effectiveness_target)),
    )


def _parse_solver(data: dict) -> SolverConfig:
    _reject_unknown("solver", data, {
        "omega", "mode", "fixed_per", "fixed_power_w", "validation_batches",
        "online_reestimation", "reestimate_every",
    })
    d = SolverConfig()
    fixed_per = data.get("fixed_per", None)
    fixed_power = data.get("fixed_power_w", None)
    return _build(
        "solver", SolverConfig,
        omega=_number("solver.omega", data.get("omega", d.omega)),
        mode=_string("solver.mode", data.get("mode", d.mode)),
        fixed_per=None if fixed_per is None else _number("solver.fixed_per", fixed_per),
        fixed_power_w=None if fixed_power is None else _number("solver.fixed_power_w", fixed_power),
        validation_batches=_number(
            "solver.validation_batches",
            data.get("validation_batches", d.validation_batches), integer=True),
        online_reestimation=_bool(
            "solver.online_reestimation",
            data.get("online_reestimation", d.online_reestimation)),
        reestimate_every=_number(
            "solver.reestimate_every", data.get("reestimate_every", d.reestimate_every),
            integer=True),
    )


def _parse_events(data) -> tuple[Event, ...]:
    if not isinstance(data, list):
        raise ConfigError("events must be a list")
    events = []
    for i, item in enumerate(data):
        item = _mapping(f"events[{i}]", item)
        _reject_unknown(f"events[{i}]", item, {"slot", "field", "value"})
        for key in ("slot", "field", "value"):
            if key not in item:
                raise ConfigError(f"events[{i}].{key} is required")
        events.append(_build(
            f"events[{i}]", Event,
            slot=_number(f"events[{i}].slot", item["slot"], integer=True),
            fld=_string(f"events[{i}].field", item["field"]),
            value=_number(f"events[{i}].value", item["value"]),
        ))
    return tuple(events)


def _parse_sweep(data: dict) -> GridSweepConfig:
    _reject_unknown("sweep", data, {
        "kind", "d_max_grid_s", "fixed_power_w", "power_grid_w", "per_grid",
        "theta_ths", "contour_thresholds",
    })
    d = GridSweepConfig()
    fixed_power = data.get("fixed_power_w", None)
    return _build(
        "sweep", GridSweepConfig,
        kind=_string("sweep.kind", data.get("kind", d.kind)),
        d_max_grid_s=_num_list("sweep.d_max_grid_s", data.get("d_max_grid_s", [])),
        fixed_power_w=None if fixed_power is None else _number("sweep.fixed_power_w", fixed_power),
        power_grid_w=_num_list("sweep.power_grid_w", data.get("power_grid_w", [])),
        per_grid=_num_list("sweep.per_grid", data.get("per_grid", [])),
        theta_ths=_num_list("sweep.theta_ths", data.get("theta_ths", [])),
        contour_thresholds=_num_list(
            "sweep.contour_thresholds",
            data.get("contour_thresholds", list(d.contour_thresholds))),
    )


def _parse_split(data: dict) -> SplitConfig:
    _reject_unknown("split", data, {"fractions"})
    d = SplitConfig()
    return _build(
        "split", SplitConfig,
        fractions=_num_list("split.fractions", data.get("fractions", list(d.fractions))),
    )


def _parse_frontier(data: dict) -> FrontierConfig:
    _reject_unknown("frontier", data, {"omegas", "theta_ths", "include_genie"})
    d = FrontierConfig()
    return _build(
        "frontier", FrontierConfig,
        omegas=_num_list("frontier.omegas", data.get("omegas", list(d.omegas))),
        theta_ths=_num_list("frontier.theta_ths", data.get("theta_ths", [])),
        include_genie=_bool("frontier.include_genie", data.get("include_genie", d.include_genie)),
    )


def parse_config(data: dict, seed_override: int | None = None) -> ScenarioConfig:
    """Resolve a config dict into a validated ScenarioConfig.

    An empty dict yields the documented defaults. `seed_override` replaces
    the seed regardless of what the dict says (CLI flag / env precedence).
    """
    data = _mapping("config", data)
    unknown = sorted(set(data) - set(_SECTIONS))
    if unknown:
        raise ConfigError(f"unknown section {unknown[0]!r}")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"schema_version must be {SCHEMA_VERSION}, got {version!r}")

    run = _mapping("run", data.get("run", {}))
    _reject_unknown("run", run, {"slots", "seed", "window", "mode"})
    slots = _number("run.slots", run.get("slots", 50000), integer=True)
    seed = _number("run.seed", run.get("seed", 42), integer=True)
    window = _number("run.window", run.get("window", 2000), integer=True)
    mode = _string("run.mode", run.get("mode", "adaptive"))
    if seed_override is not None:
        seed = int(seed_override)

    sweep = data.get("sweep", None)
    split = data.get("split", None)
    return _build(
        "config", ScenarioConfig,
        slots=slots, seed=seed, window=window, mode=mode,
        geometry=_parse_geometry(_mapping("geometry", data.get("geometry", {}))),
        fading=_parse_fading(_mapping("fading", data.get("fading", {}))),
        radio=_parse_radio(_mapping("radio", data.get("radio", {}))),
        compute=_parse_compute(_mapping("compute_delay", data.get("compute_delay", {}))),
        oracle=_parse_oracle(_mapping("oracle", data.get("oracle", {}))),
        requirements=_parse_requirements(
            _mapping("requirements", data.get("requirements", {}))),
        solver=_parse_solver(_mapping("solver", data.get("solver", {}))),
        events=_parse_events(data.get("events", [])),
        sweep=None if sweep is None else _parse_sweep(_mapping("sweep", sweep)),
        split=None if split is None else _parse_split(_mapping("split", split)),
        frontier=_parse_frontier(_mapping("frontier", data.get("frontier", {}))),
    )


def load_config(path, seed_override: int | None = None) -> ScenarioConfig:
    """Parse a JSON config file."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return parse_config(data, seed_override=seed_override)


def env_seed() -> int | None:
    """Seed override from the GOCOEXIST_SEED environment variable, if set."""
    raw = os.environ.get(ENV_SEED_VAR)
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{ENV_SEED_VAR} must be an integer, got {raw!r}") from None
    if value < 0:
        raise ConfigError(f"{ENV_SEED_VAR} must be non-negative, got {value}")
    return value


def emit_config(cfg: ScenarioConfig) -> dict[str, Any]:
    """Fully resolved, JSON-serializable form of a ScenarioConfig."""
    geom, fad, radio = cfg.geometry, cfg.fading, cfg.radio
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "run": {"slots": cfg.slots, "seed": cfg.seed, "window": cfg.window, "mode": cfg.mode},
        "geometry": {
            "ue_go": list(geom.ue_go), "ap_go": list(geom.ap_go),
            "ue_do": list(geom.ue_do), "ap_do": list(geom.ap_do),
            "antennas": geom.antennas,
            "antenna_spacing_wavelengths": geom.antenna_spacing_wavelengths,
            "carrier_hz": geom.carrier_hz,
        },
        "fading": {
            "rician_k": fad.rician_k,
            "pathloss_exponent": fad.pathloss_exponent,
            "reference_distance_m": fad.reference_distance_m,
        },
        "radio": {
            "bandwidth_hz": radio.bandwidth_hz,
            "noise_density_dbm_hz": radio.noise_density_dbm_hz,
            "noise_figure_db": radio.noise_figure_db,
            "go_tx_power_w": radio.go_tx_power_w,
            "do_power_grid_w": list(radio.do_power_grid_w),
            "per_grid": list(radio.per_grid),
            "blocklength": radio.blocklength,
            "packet_bits": radio.packet_bits,
            "pattern_bits": radio.pattern_bits,
            "batch_patterns": radio.batch_patterns,
        },
        "requirements": {
            "theta_th": cfg.requirements.theta_th,
            "d_max_s": cfg.requirements.d_max_s,
            "effectiveness_target": cfg.requirements.effectiveness_target,
        },
        "solver": {
            "omega": cfg.solver.omega,
            "mode": cfg.solver.mode,
            "fixed_per": cfg.solver.fixed_per,
            "fixed_power_w": cfg.solver.fixed_power_w,
            "validation_batches": cfg.solver.validation_batches,
            "online_reestimation": cfg.solver.online_reestimation,
            "reestimate_every": cfg.solver.reestimate_every,
        },
        "events": [{"slot": e.slot, "field": e.fld, "value": e.value} for e in cfg.events],
        "frontier": {
            "omegas": list(cfg.frontier.omegas),
            "theta_ths": list(cfg.frontier.theta_ths),
            "include_genie": cfg.frontier.include_genie,
        },
    }
    dist = cfg.compute.distribution
    if isinstance(dist, compute_mod.EmpiricalHistogram):
        out["compute_delay"] = {
            "source": "histogram",
            "bin_low_s": list(dist.bin_low_s),
            "bin_high_s": list(dist.bin_high_s),
            "probs": list(dist.probs),
            "offset_s": cfg.compute.offset_s,
        }
    else:
        out["compute_delay"] = {
            "source": "parametric",
            "family": dist.family,
            "params": dict(dist.params),
            "offset_s": cfg.compute.offset_s,
        }
    orc = cfg.oracle
    if isinstance(orc, metrics_mod.ParametricEntropyOracle):
        out["oracle"] = {
            "kind": "parametric",
            "h_min_nats": orc.h_min_nats,
            "labels": orc.labels,
            "gain": orc.gain,
            "shape": orc.shape,
            "noise_std_nats": orc.noise_std_nats,
        }
    else:
        out["oracle"] = {
            "kind": "table_inline",
            "levels": list(np.asarray(orc.levels, dtype=float)),
            "samples": [list(np.asarray(s, dtype=float)) for s in orc.samples],
            "labels": orc.labels,
            "h_min_nats": orc.h_min_nats,
        }
    if cfg.sweep is not None:
        out["sweep"] = {
            "kind": cfg.sweep.kind,
            "d_max_grid_s": list(cfg.sweep.d_max_grid_s),
            "fixed_power_w": cfg.sweep.fixed_power_w,
            "power_grid_w": list(cfg.sweep.power_grid_w),
            "per_grid": list(cfg.sweep.per_grid),
            "theta_ths": list(cfg.sweep.theta_ths),
            "contour_thresholds": list(cfg.sweep.contour_thresholds),
        }
    if cfg.split is not None:
        out["split"] = {"fractions": list(cfg.split.fractions)}
    return out


# Named experiment protocols. Each resolves to a full ScenarioConfig; the
# command is the CLI subcommand that reproduces the protocol's artifact.
PRESETS: dict[str, dict[str, Any]] = {
    "fig6": {
        "command": "sweep",
        "config": {
            "run": {"mode": "grid-sweep"},
            "sweep": {
                "kind": "per_dmax",
                # deadline far beyond any realizable delay: quality-only view
                "d_max_grid_s": [10.0],
                "fixed_power_w": 0.2,
                "theta_ths": [-0.8, -0.5, -0.4],
            },
        },
    },
    "fig7": {
        "command": "sweep",
        "config": {
            "run": {"mode": "grid-sweep"},
            "requirements": {"d_max_s": 0.050},
            "sweep": {
                "kind": "per_power",
                "per_grid": [1e-7, 1e-4, 1e-3, 1e-2],
            },
        },
    },
    "fig8": {
        "command": "sweep",
        "config": {
            "run": {"mode": "grid-sweep"},
            "sweep": {
                "kind": "per_dmax",
                "d_max_grid_s": [0.025 + 0.0025 * i for i in range(15)],
                "fixed_power_w": 0.2,
                "theta_ths": [-0.8, -0.5, -0.4],
                "contour_thresholds": [0.7, 0.8, 0.9],
            },
        },
    },
    "fig9": {
        "command": "sweep",
        "config": {
            "run": {"mode": "grid-sweep"},
            "requirements": {"d_max_s": 0.045},
            "sweep": {
                "kind": "per_power",
                "theta_ths": [-0.8, -0.5, -0.4],
                "contour_thresholds": [0.8],
            },
        },
    },
    "fig10a": {
        "command": "frontier",
        "config": {
            "run": {"slots": 20000},
            "requirements": {"d_max_s": 0.045, "effectiveness_target": 0.82},
            "frontier": {
                "omegas": [1e-10, 3e-10, 1e-9, 3e-9, 1e-8],
                "theta_ths": [-0.8, -0.5, -0.4],
                "include_genie": True,
            },
        },
    },
    "fig10b": {
        "command": "frontier",
        "config": {
            "run": {"slots": 20000},
            "radio": {"bandwidth_hz": 5e8},
            "requirements": {"d_max_s": 0.045, "effectiveness_target": 0.82},
            "frontier": {
                "omegas": [1e-10, 3e-10, 1e-9, 3e-9, 1e-8],
                "theta_ths": [-0.8, -0.5, -0.4],
                "include_genie": True,
            },
            "split": {"fractions": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]},
        },
    },
    "fig11": {
        "command": "run",
        "config": {
            "requirements": {"theta_th": -0.8, "d_max_s": 0.045},
            "sweep": {
                "kind": "per_power",
                "theta_ths": [-0.8, -0.5, -0.4],
                "contour_thresholds": [0.8],
            },
        },
    },
    "fig12": {
        "command": "run",
        "config": {
            "requirements": {"theta_th": -0.4, "d_max_s": 0.045, "effectiveness_target": 0.8},
            "events": [
                {"slot": 10000, "field": "theta_th", "value": -0.5},
                {"slot": 20000, "field": "effectiveness_target", "value": 0.85},
            ],
        },
    },
    "fig13": {
        "command": "run",
        "config": {
            "requirements": {"theta_th": -0.4, "d_max_s": 0.050, "effectiveness_target": 0.8},
            "events": [
                {"slot": 10000, "field": "compute_offset_s", "value": 0.005},
                {"slot": 30000, "field": "compute_offset_s", "value": 0.007},
            ],
        },
    },
}


def available_presets() -> tuple[str, ...]:
    return tuple(PRESETS)


def preset_dict(name: str) -> dict:
    """Deep copy of a preset's config dict."""
    if name not in PRESETS:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(available_presets())}")
    return json.loads(json.dumps(PRESETS[name]["config"]))


def preset_command(name: str) -> str:
    if name not in PRESETS:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(available_presets())}")
    return PRESETS[name]["command"]


def resolve_preset(name: str, seed_override: int | None = None) -> ScenarioConfig:
    return parse_config(preset_dict(name), seed_override=seed_override)
