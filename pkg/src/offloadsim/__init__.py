"""Deterministic closed-loop simulator of a gravity-offloading testbed:
a CoreXY ceiling tracker under discrete PID control keeps a counterweight
cable vertical over a moving target."""

from .kinematics import (
    BeltFeeds,
    CableTilt,
    PlanarDisplacement,
    StepperGeometry,
    DEFAULT_GEOMETRY,
    displacement_to_feeds,
    feeds_to_displacement,
    quantize_feed,
    tilt_to_displacement,
)
from .plant import (
    G_EARTH,
    EncoderReading,
    OffloadForce,
    PlantConfig,
    PlantState,
    StepRateExceeded,
    TensionModel,
    advance_target,
    apply_steps,
    compute_tension,
    geometric_tilt,
    init_state,
    offload_force,
    read_encoders,
)
from .controller import (
    ControllerState,
    DEFAULT_GAINS,
    NoFeasibleGains,
    PidGains,
    control_step,
    tune_gains,
)
from .scenarios import (
    ScenarioConfig,
    cart_push,
    counterweight_for_gravity,
    slope_climb,
    stationary,
    waypoints,
)
from .engine import SimConfig, SimResult, Termination, run, run_batch
from .reporting import (
    EmptyRun,
    MetricsRecord,
    SummaryStats,
    emit_plot_data,
    read_csv,
    summarize,
    write_csv,
    write_summary,
)
from .config import ConfigError, build_sim_config, gravity_preset, load_config

__version__ = "0.1.0"
