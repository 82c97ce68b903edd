"""Link-level simulator and resource-allocation library for a goal-oriented
edge-inference uplink sharing spectrum with a throughput-oriented uplink.

The package models the shared-spectrum radio links (rf), the edge computing
delay (compute), the inference-quality metrics and goal success criterion
(metrics), the virtual-queue controller that picks the target packet error
rate and the interfering user's transmit power each slot (optimizer), the
Monte Carlo slot engine with sweeps and baselines (engine), and JSON config
/ CSV / plotting front ends (config, outputs, plots, cli).
"""

from ._version import __version__
from .compute import (
    ComputeDelayModel,
    EmpiricalHistogram,
    ParametricDelay,
    default_compute_model,
    histogram_cdf,
    load_histogram_csv,
    sample_comp_delay,
    sample_comp_delays,
    set_offset,
)
from .config import (
    ConfigError,
    available_presets,
    emit_config,
    load_config,
    parse_config,
    resolve_preset,
)
from .engine import (
    Event,
    FrontierConfig,
    FrontierResult,
    GridSweepConfig,
    HeatmapData,
    ScenarioConfig,
    SplitConfig,
    SplitResult,
    TraceLog,
    convergence_slot,
    derive_stream,
    moving_average,
    run_adaptive,
    run_bandwidth_split,
    run_frontier,
    run_grid,
)
from .metrics import (
    GoalOutcome,
    GoalRequirements,
    ParametricEntropyOracle,
    TableEntropyOracle,
    batch_avg_entropy,
    effectiveness,
    entropy,
    goal_cost,
    goal_success,
    load_oracle_table_csv,
    nrei,
    oracle_theta,
    sample_packet_errors,
)
from .optimizer import (
    GridEvaluator,
    SlotDecision,
    SolverConfig,
    SuccessProbTable,
    VirtualQueueState,
    build_success_table,
    dpp_objective,
    isotonic_non_increasing,
    solve_slot,
    theoretical_bound_check,
    update_queue,
)
from .rf import (
    ChannelRealization,
    FadingParams,
    Geometry,
    RadioConfig,
    channel_dispersion,
    fbl_rate,
    noise_power,
    q_inv,
    sample_channel,
    sample_channels,
    shannon_rate,
    sinr_do,
    sinr_go,
    tx_delay,
)

__all__ = [name for name in dir() if not name.startswith("_")]
