"""Physical truth of the testbed: cable geometry, counterweight tension,
offload force on the target, stepper-driven tracker motion and the
encoder measurement model.

The tracker pulley rides at a fixed rail height; the counterweight provides
passive vertical compliance (its height follows the cable-length budget), so
the only actuated degrees of freedom are the two belts.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .kinematics import CableTilt, StepperGeometry, feeds_to_displacement, BeltFeeds

__all__ = [
    "TensionModel",
    "PlantConfig",
    "PlantState",
    "OffloadForce",
    "EncoderReading",
    "StepRateExceeded",
    "init_state",
    "geometric_tilt",
    "compute_tension",
    "offload_force",
    "apply_steps",
    "advance_target",
    "read_encoders",
]

G_EARTH = 9.80665  # standard gravity [m/s^2]


class TensionModel(Enum):
    QUASI_STATIC = "quasi_static"
    DYNAMIC = "dynamic"


class StepRateExceeded(RuntimeError):
    """A step command violated the per-motor rate limit (controller bug)."""


class PlantConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PlantConfig:
    z_rail: float = 2.5              # tracker pulley plane height [m]
    m_cw: float = 2.039              # counterweight mass [kg]
    g_earth: float = G_EARTH
    cable_total: float = 6.0         # total cable length [m]
    tension_model: TensionModel = TensionModel.QUASI_STATIC
    encoder_resolution: float = 2.0 * math.pi / 4096  # [rad/count]
    encoder_noise_sigma: float = 0.0  # [rad]
    noise_seed: int = 0

    def __post_init__(self):
        if not self.m_cw > 0:
            raise PlantConfigError(f"counterweight mass must be positive, got {self.m_cw}")
        if not self.encoder_resolution > 0:
            raise PlantConfigError("encoder resolution must be positive")
        if self.encoder_noise_sigma < 0:
            raise PlantConfigError("encoder noise sigma must be non-negative")


@dataclass(frozen=True)
class PlantState:
    t: float                      # [s]
    p_target: tuple[float, float, float]   # attachment point [m]
    p_tracker: tuple[float, float]         # pulley x, y (z fixed at z_rail) [m]
    belt_a: float                 # accumulated belt position [m]
    belt_b: float
    l1: float                     # tracker -> target cable length [m]
    z_cw: float                   # counterweight height [m]
    tension: float                # [N]
    l1_hist: tuple[float, ...]    # up to 3 most recent l1 samples, oldest first
    hist_dt: float                # sample spacing of l1_hist [s]


@dataclass(frozen=True)
class OffloadForce:
    fx: float
    fy: float
    fz: float
    alpha: float  # angle of the force from vertical [rad]


@dataclass(frozen=True)
class EncoderReading:
    theta_meas: float
    phi_meas: float


def _cable_length(p_tracker, p_target, z_rail):
    dx = p_target[0] - p_tracker[0]
    dy = p_target[1] - p_tracker[1]
    dz = p_target[2] - z_rail
    return math.sqrt(dx * dx + dy * dy + dz * dz)


def init_state(c: PlantConfig, p_target, p_tracker_xy, t0: float = 0.0,
               hist_dt: float = 1e-3) -> PlantState:
    """Build a consistent initial state.

    The counterweight height is fixed by the cable-length budget:
    l1 + (z_rail - z_cw) = cable_total, so z_cw = z_rail - cable_total + l1.
    """
    p_target = tuple(float(v) for v in p_target)
    p_tracker = (float(p_tracker_xy[0]), float(p_tracker_xy[1]))
    if p_target[2] >= c.z_rail:
        raise PlantConfigError("target attachment must lie below the rail plane")
    l1 = _cable_length(p_tracker, p_target, c.z_rail)
    if l1 >= c.cable_total:
        raise PlantConfigError("total cable length too short for this geometry")
    s = PlantState(
        t=t0,
        p_target=p_target,
        p_tracker=p_tracker,
        belt_a=0.0,
        belt_b=0.0,
        l1=l1,
        z_cw=c.z_rail - c.cable_total + l1,
        tension=c.m_cw * c.g_earth,
        l1_hist=(l1,),
        hist_dt=hist_dt,
    )
    return replace(s, tension=compute_tension(s, c))


def geometric_tilt(s: PlantState) -> CableTilt:
    """True cable tilt from the current geometry."""
    if s.l1 <= 0:
        raise ValueError("degenerate geometry: zero cable length")
    dx = s.p_target[0] - s.p_tracker[0]
    dy = s.p_target[1] - s.p_tracker[1]
    return CableTilt(theta=math.asin(-dx / s.l1), phi=math.asin(dy / s.l1), l=s.l1)


def compute_tension(s: PlantState, c: PlantConfig) -> float:
    """Cable tension: counterweight weight, optionally corrected for the
    counterweight's vertical acceleration (z_cw tracks l1, so z_cw'' = l1'').

    The dynamic correction uses a backward second-order finite difference over
    the last three l1 samples and falls back to quasi-static until the history
    is full.
    """
    if c.tension_model is TensionModel.QUASI_STATIC or len(s.l1_hist) < 3:
        return c.m_cw * c.g_earth
    l_a, l_b, l_c = s.l1_hist[-3], s.l1_hist[-2], s.l1_hist[-1]
    l1_ddot = (l_c - 2.0 * l_b + l_a) / (s.hist_dt * s.hist_dt)
    return c.m_cw * (c.g_earth + l1_ddot)


def offload_force(s: PlantState, tension: float) -> OffloadForce:
    """Force on the target: tension along the unit vector toward the pulley."""
    if s.l1 <= 0:
        raise ValueError("degenerate geometry: zero cable length")
    ux = (s.p_tracker[0] - s.p_target[0]) / s.l1
    uy = (s.p_tracker[1] - s.p_target[1]) / s.l1
    # z_rail recovered from geometry: pulley sits above the target by the
    # vertical cable component
    uz = math.sqrt(max(0.0, 1.0 - ux * ux - uy * uy))
    fx, fy, fz = tension * ux, tension * uy, tension * uz
    alpha = math.atan2(math.hypot(fx, fy), abs(fz))
    return OffloadForce(fx=fx, fy=fy, fz=fz, alpha=alpha)


def _recompute(s: PlantState, c: PlantConfig) -> PlantState:
    l1 = _cable_length(s.p_tracker, s.p_target, c.z_rail)
    s = replace(s, l1=l1, z_cw=c.z_rail - c.cable_total + l1)
    return replace(s, tension=compute_tension(s, c))


def apply_steps(s: PlantState, steps_a: int, steps_b: int, g: StepperGeometry,
                dt: float, c: PlantConfig) -> PlantState:
    """Advance the belts by whole steps and move the tracker accordingly.

    The caller must have rate-limited the command; exceeding the per-motor
    step budget for dt aborts the simulation.
    """
    budget = g.max_step_rate * dt
    if abs(steps_a) > budget + 1e-9 or abs(steps_b) > budget + 1e-9:
        raise StepRateExceeded(
            f"steps ({steps_a}, {steps_b}) exceed {budget:.1f} allowed in dt={dt}"
        )
    da = steps_a * g.feed_per_step
    db = steps_b * g.feed_per_step
    d = feeds_to_displacement(BeltFeeds(da=da, db=db))
    s = replace(
        s,
        p_tracker=(s.p_tracker[0] + d.dx, s.p_tracker[1] + d.dy),
        belt_a=s.belt_a + da,
        belt_b=s.belt_b + db,
    )
    return _recompute(s, c)


def advance_target(s: PlantState, traj, dt: float, c: PlantConfig) -> PlantState:
    """Move the target to its prescribed position at t + dt and shift the
    cable-length history."""
    t_next = s.t + dt
    p = traj(t_next)
    s = replace(s, t=t_next, p_target=(float(p[0]), float(p[1]), float(p[2])))
    s = _recompute(s, c)
    hist = (s.l1_hist + (s.l1,))[-3:]
    return replace(s, l1_hist=hist, hist_dt=dt)


def read_encoders(s: PlantState, c: PlantConfig, rng: np.random.Generator) -> EncoderReading:
    """Measured tilt: true geometry plus Gaussian noise, quantized to whole
    encoder counts (round half to even)."""
    tilt = geometric_tilt(s)
    theta, phi = tilt.theta, tilt.phi
    if c.encoder_noise_sigma > 0:
        noise = rng.normal(0.0, c.encoder_noise_sigma, size=2)
        theta += noise[0]
        phi += noise[1]
    res = c.encoder_resolution
    return EncoderReading(
        theta_meas=round(theta / res) * res,
        phi_meas=round(phi / res) * res,
    )
