"""Fixed-step orchestration of plant, controller and trajectory.

Time is an integer physics-step counter (t = n * dt_phys computed on demand),
so identical configurations produce bit-identical telemetry.  Steps commanded
by a control tick are spread uniformly (largest-remainder schedule) over the
physics substeps of the following control interval.
"""

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .controller import ControllerState, control_step
from .plant import (
    PlantState,
    StepRateExceeded,
    advance_target,
    apply_steps,
    geometric_tilt,
    init_state,
    offload_force,
    read_encoders,
)
from .reporting import MetricsRecord, SummaryStats, summarize
from .scenarios import ScenarioConfig, counterweight_for_gravity

__all__ = ["SimConfig", "SimResult", "Termination", "run", "run_batch"]


class Termination(Enum):
    COMPLETED = "completed"
    STEP_RATE_EXCEEDED = "step_rate_exceeded"
    CONFIG_ERROR = "config_error"


@dataclass(frozen=True)
class SimConfig:
    scenario: ScenarioConfig
    dt_phys: float = 1e-3
    ctrl_divisor: int = 10      # controller runs every ctrl_divisor physics steps
    record_divisor: int = 10    # telemetry decimation
    initial_tracker_offset: tuple[float, float] = (0.0, 0.0)
    controller_l_scale: float = 1.0  # deliberate cable-length mismatch factor

    def __post_init__(self):
        if not self.dt_phys > 0:
            raise ValueError("dt_phys must be positive")
        if self.ctrl_divisor < 1 or self.record_divisor < 1:
            raise ValueError("divisors must be >= 1")


@dataclass(frozen=True)
class SimResult:
    records: list[MetricsRecord]
    summary: SummaryStats | None
    saturation_events: int
    termination: Termination
    error: str | None = None
    tuned_m_cw: float | None = None


def _spread(total_steps: int, n: int) -> list[int]:
    """Split an integer step count over n substeps, uniformly, summing exactly."""
    out = []
    prev = 0
    for k in range(1, n + 1):
        cum = (total_steps * k) // n if total_steps >= 0 else -((-total_steps * k) // n)
        out.append(cum - prev)
        prev = cum
    return out


def _sized_plant(sc: ScenarioConfig):
    """Plant config with the counterweight sized from (m_target, g_sim),
    unless the scenario pins an explicit counterweight mass."""
    if not sc.size_counterweight:
        return sc.plant
    m_cw = counterweight_for_gravity(sc.m_target, sc.g_sim, sc.plant.g_earth)
    if m_cw <= 0:
        raise ValueError(
            "g_sim equals g_earth: sized counterweight is zero; "
            "disable sizing and set an explicit counterweight mass instead")
    return replace(sc.plant, m_cw=m_cw)


def _make_record(s: PlantState, meas, cs: ControllerState) -> MetricsRecord:
    tilt = geometric_tilt(s)
    f = offload_force(s, s.tension)
    return MetricsRecord(
        t=s.t,
        target_x=s.p_target[0], target_y=s.p_target[1], target_z=s.p_target[2],
        tracker_x=s.p_tracker[0], tracker_y=s.p_tracker[1],
        theta=tilt.theta, phi=tilt.phi,
        theta_meas=meas.theta_meas, phi_meas=meas.phi_meas,
        belt_a=s.belt_a, belt_b=s.belt_b,
        tension=s.tension,
        fx=f.fx, fy=f.fy, fz=f.fz, alpha=f.alpha,
        cmd_vx=cs.cmd_vx, cmd_vy=cs.cmd_vy,
        saturated=cs.saturated,
    )


def run(cfg: SimConfig, probe=None) -> SimResult:
    """Run one deterministic closed-loop simulation.

    probe, if given, is called after every control tick with
    (measurement, steps_a, steps_b, controller_state); it is for
    inspection only and must not mutate anything.
    """
    records: list[MetricsRecord] = []
    saturation_events = 0
    try:
        sc = cfg.scenario
        plant_cfg = _sized_plant(sc)
        traj = sc.trajectory
        p0 = traj(0.0)
        tracker0 = (p0[0] + cfg.initial_tracker_offset[0],
                    p0[1] + cfg.initial_tracker_offset[1])
        s = init_state(plant_cfg, p0, tracker0, hist_dt=cfg.dt_phys)
        l_ctrl = s.l1 * cfg.controller_l_scale
        rng = np.random.default_rng(plant_cfg.noise_seed)
        dt_ctrl = cfg.dt_phys * cfg.ctrl_divisor
        cs = ControllerState(dt_ctrl=dt_ctrl)
        meas = read_encoders(s, plant_cfg, rng)
        n_steps_total = max(1, round(sc.duration / cfg.dt_phys))
        pending_a = [0] * cfg.ctrl_divisor
        pending_b = [0] * cfg.ctrl_divisor

        records.append(_make_record(s, meas, cs))
        for n in range(n_steps_total):
            sub = n % cfg.ctrl_divisor
            if sub == 0:
                meas = read_encoders(s, plant_cfg, rng)
                steps_a, steps_b, cs = control_step(meas, l_ctrl, sc.gains, cs,
                                                    sc.geometry)
                if cs.saturated:
                    saturation_events += 1
                if probe is not None:
                    probe(meas, steps_a, steps_b, cs)
                pending_a = _spread(steps_a, cfg.ctrl_divisor)
                pending_b = _spread(steps_b, cfg.ctrl_divisor)
            s = apply_steps(s, pending_a[sub], pending_b[sub], sc.geometry,
                            cfg.dt_phys, plant_cfg)
            s = advance_target(s, traj, cfg.dt_phys, plant_cfg)
            # pin time to the integer step counter so it never drifts
            s = replace(s, t=(n + 1) * cfg.dt_phys)
            if (n + 1) % cfg.record_divisor == 0:
                records.append(_make_record(s, meas, cs))
    except StepRateExceeded as exc:
        return SimResult(records=records,
                         summary=summarize(records) if records else None,
                         saturation_events=saturation_events,
                         termination=Termination.STEP_RATE_EXCEEDED,
                         error=str(exc))
    except (ValueError, TypeError) as exc:
        return SimResult(records=records,
                         summary=summarize(records) if records else None,
                         saturation_events=saturation_events,
                         termination=Termination.CONFIG_ERROR,
                         error=str(exc))
    return SimResult(records=records, summary=summarize(records),
                     saturation_events=saturation_events,
                     termination=Termination.COMPLETED,
                     tuned_m_cw=_sized_plant(cfg.scenario).m_cw)


def run_batch(cfgs: list[SimConfig]) -> list[SimResult]:
    """Run each configuration independently; per-item failures do not stop
    the batch."""
    results = []
    for cfg in cfgs:
        try:
            results.append(run(cfg))
        except Exception as exc:  # invalid cfg objects, not sim failures
            results.append(SimResult(records=[], summary=None,
                                     saturation_events=0,
                                     termination=Termination.CONFIG_ERROR,
                                     error=str(exc)))
    return results
