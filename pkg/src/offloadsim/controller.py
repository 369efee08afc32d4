"""Discrete PID tracking loop and the gain-tuning grid search.

The controller reads quantized tilt angles, converts them to a displacement
error with the configured cable length, runs a velocity-form PID per axis,
maps the resulting feed through the CoreXY belt relation, rate-limits each
belt and quantizes to whole steps with residual carry.
"""

import itertools
import math
from dataclasses import dataclass, replace

from .kinematics import (
    BeltFeeds,
    PlanarDisplacement,
    StepperGeometry,
    displacement_to_feeds,
    quantize_feed,
)
from .plant import EncoderReading

__all__ = ["PidGains", "ControllerState", "control_step", "tune_gains",
           "NoFeasibleGains", "DEFAULT_GAINS"]


class NoFeasibleGains(RuntimeError):
    """Every grid candidate violated the tuning constraints."""


@dataclass(frozen=True)
class PidGains:
    kp: float = 8.0              # [1/s] velocity per meter of error
    ki: float = 2.0              # [1/s^2]
    kd: float = 0.1              # dimensionless
    integral_limit: float = 0.05  # anti-windup clamp on the error integral [m]
    deadband: float = 0.0         # measured angles below this are ignored [rad]

    def __post_init__(self):
        if self.kp < 0 or self.ki < 0 or self.kd < 0:
            raise ValueError("PID gains must be non-negative")
        if not self.integral_limit > 0:
            raise ValueError("integral_limit must be positive")
        if self.deadband < 0:
            raise ValueError("deadband must be non-negative")


# Frozen via the tuning sweep on the cart-push scenario (see demos/tune_gains.py).
DEFAULT_GAINS = PidGains()


@dataclass(frozen=True)
class ControllerState:
    dt_ctrl: float
    integral_x: float = 0.0   # [m*s]
    integral_y: float = 0.0
    prev_err_x: float = 0.0   # [m]
    prev_err_y: float = 0.0
    residual_a: float = 0.0   # carried sub-step feed [m]
    residual_b: float = 0.0
    saturated: bool = False
    cmd_vx: float = 0.0       # last commanded tracker velocity [m/s]
    cmd_vy: float = 0.0


def _clamp(v, lim):
    return max(-lim, min(lim, v))


def control_step(meas: EncoderReading, l: float, gains: PidGains,
                 cs: ControllerState, g: StepperGeometry) -> tuple[int, int, ControllerState]:
    """One control tick: measurement in, whole step commands out.

    The integrator freezes (anti-windup) on ticks where either belt hits its
    rate limit; quantization residuals carry over so no feed is lost.
    """
    dt = cs.dt_ctrl
    theta = 0.0 if abs(meas.theta_meas) < gains.deadband else meas.theta_meas
    phi = 0.0 if abs(meas.phi_meas) < gains.deadband else meas.phi_meas

    e_x = -l * math.sin(theta)
    e_y = l * math.sin(phi)

    int_x = _clamp(cs.integral_x + e_x * dt, gains.integral_limit)
    int_y = _clamp(cs.integral_y + e_y * dt, gains.integral_limit)
    de_x = (e_x - cs.prev_err_x) / dt
    de_y = (e_y - cs.prev_err_y) / dt

    vx = gains.kp * e_x + gains.ki * int_x + gains.kd * de_x
    vy = gains.kp * e_y + gains.ki * int_y + gains.kd * de_y

    feeds = displacement_to_feeds(PlanarDisplacement(dx=vx * dt, dy=vy * dt))
    feed_limit = g.max_belt_speed * dt
    fa = _clamp(feeds.da, feed_limit)
    fb = _clamp(feeds.db, feed_limit)
    saturated = (fa != feeds.da) or (fb != feeds.db)
    if saturated:
        int_x, int_y = cs.integral_x, cs.integral_y

    steps_a, res_a = quantize_feed(fa + cs.residual_a, g)
    steps_b, res_b = quantize_feed(fb + cs.residual_b, g)

    cs_next = replace(
        cs,
        integral_x=int_x,
        integral_y=int_y,
        prev_err_x=e_x,
        prev_err_y=e_y,
        residual_a=res_a,
        residual_b=res_b,
        saturated=saturated,
        cmd_vx=vx,
        cmd_vy=vy,
    )
    return steps_a, steps_b, cs_next


def tune_gains(scenario, grid: dict, run_fn=None):
    """Exhaustive grid search for gains minimizing the worst tilt of the
    offload force over a scenario run.

    grid maps any of 'kp', 'ki', 'kd' to candidate lists; unlisted gains keep
    the scenario's values.  Candidates that abort (step-rate violation) are
    infeasible.  Ties break on (kp, ki, kd) lexicographic order.

    Returns (best PidGains, report) where report is a list of per-candidate
    dicts with the achieved metrics.
    """
    from .engine import SimConfig, run, Termination  # deferred: engine imports us

    if run_fn is None:
        run_fn = run
    axes = []
    for key in ("kp", "ki", "kd"):
        vals = grid.get(key)
        if vals is not None and len(vals) == 0:
            raise NoFeasibleGains(f"empty candidate list for {key}")
        axes.append(vals if vals is not None else [getattr(scenario.gains, key)])
    if not grid:
        raise NoFeasibleGains("empty gain grid")

    report = []
    best = None
    best_key = None
    for kp, ki, kd in itertools.product(*axes):
        gains = replace(scenario.gains, kp=kp, ki=ki, kd=kd)
        cfg = SimConfig(scenario=replace(scenario, gains=gains))
        result = run_fn(cfg)
        feasible = result.termination is Termination.COMPLETED
        max_alpha = result.summary.max_alpha_deg if feasible else math.inf
        report.append({
            "kp": kp, "ki": ki, "kd": kd,
            "feasible": feasible,
            "max_alpha_deg": max_alpha,
            "max_horizontal_force_n": (
                result.summary.max_horizontal_force_n if feasible else math.inf),
        })
        key = (max_alpha, kp, ki, kd)
        if feasible and (best_key is None or key < best_key):
            best, best_key = gains, key
    if best is None:
        raise NoFeasibleGains("no grid candidate completed without violations")
    return best, report
