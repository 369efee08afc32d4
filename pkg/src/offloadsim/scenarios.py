"""Target trajectory generators, counterweight sizing and experiment configs.

All samplers are deterministic pure functions of time returning the 3D
attachment-point position.  Trajectories are continuous and piecewise smooth;
the moving segments use a smoothstep ease so a hand-push or a robot step does
not look like a velocity discontinuity to the tracker.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .controller import PidGains, DEFAULT_GAINS
from .kinematics import StepperGeometry, DEFAULT_GEOMETRY
from .plant import PlantConfig, G_EARTH

__all__ = [
    "counterweight_for_gravity",
    "stationary",
    "cart_push",
    "slope_climb",
    "waypoints",
    "ScenarioConfig",
]


def counterweight_for_gravity(m_target: float, g_sim: float,
                              g_earth: float = G_EARTH) -> float:
    """Counterweight mass so the quasi-static vertical offload equals
    m_target * (g_earth - g_sim)."""
    if not m_target > 0:
        raise ValueError(f"target mass must be positive, got {m_target}")
    if not 0.0 <= g_sim <= g_earth:
        raise ValueError(f"simulated gravity {g_sim} outside [0, {g_earth}]")
    return m_target * (1.0 - g_sim / g_earth)


def _smoothstep(u: float) -> float:
    """C1 ease from 0 to 1 on [0, 1]."""
    u = min(1.0, max(0.0, u))
    return u * u * (3.0 - 2.0 * u)


@dataclass(frozen=True)
class _Stationary:
    origin: tuple[float, float, float] = (0.0, 0.0, 0.5)
    duration: float = 0.0

    def __call__(self, t: float) -> np.ndarray:
        return np.array(self.origin)


@dataclass(frozen=True)
class _CartPush:
    """Trapezoidal speed profile along a horizontal unit direction."""

    origin: tuple[float, float, float]
    direction: tuple[float, float]
    speed: float
    distance: float
    ramp_time: float
    duration: float

    def _path_length(self, t: float) -> float:
        v, tr, T = self.speed, self.ramp_time, self.duration
        t = min(max(t, 0.0), T)
        if T <= 2.0 * tr:  # degenerate triangle profile
            half = T / 2.0
            peak = self.distance / half if half > 0 else 0.0
            if t <= half:
                return 0.5 * peak / half * t * t if half > 0 else 0.0
            td = T - t
            return self.distance - 0.5 * peak / half * td * td
        if t <= tr:
            return 0.5 * v / tr * t * t
        if t <= T - tr:
            return 0.5 * v * tr + v * (t - tr)
        td = T - t
        return self.distance - 0.5 * v / tr * td * td

    def __call__(self, t: float) -> np.ndarray:
        s = self._path_length(t)
        return np.array([
            self.origin[0] + self.direction[0] * s,
            self.origin[1] + self.direction[1] * s,
            self.origin[2],
        ])


@dataclass(frozen=True)
class _SlopeClimb:
    """Stop-and-go steps up a straight slope line in the x-z plane."""

    origin: tuple[float, float, float]
    slope_angle: float
    step_length: float
    dwell: float
    n_steps: int
    step_time: float
    duration: float

    def _distance_along(self, t: float) -> float:
        if self.n_steps == 0:
            return 0.0
        cycle = self.step_time + self.dwell
        n_done = min(self.n_steps, int(t // cycle)) if cycle > 0 else self.n_steps
        d = n_done * self.step_length
        if n_done < self.n_steps:
            t_in = t - n_done * cycle
            if 0.0 <= t_in < self.step_time:
                d += self.step_length * _smoothstep(t_in / self.step_time)
            elif t_in >= self.step_time:
                d += self.step_length
        return min(d, self.n_steps * self.step_length)

    def __call__(self, t: float) -> np.ndarray:
        d = self._distance_along(t)
        return np.array([
            self.origin[0] + d * math.cos(self.slope_angle),
            self.origin[1],
            self.origin[2] + d * math.sin(self.slope_angle),
        ])


@dataclass(frozen=True)
class _Waypoints:
    """Visit a list of 3D points with eased segments and optional dwells."""

    origin: tuple[float, float, float]
    points: tuple[tuple[float, float, float], ...]
    speed: float
    dwell: float
    duration: float
    # per-segment (start_time, seg_time, p0, p1), precomputed
    segments: tuple = field(default=())

    def __call__(self, t: float) -> np.ndarray:
        pos = np.array(self.origin)
        for t0, seg_time, p0, p1 in self.segments:
            if t < t0:
                break
            u = 1.0 if seg_time == 0 else _smoothstep((t - t0) / seg_time)
            pos = np.array(p0) + u * (np.array(p1) - np.array(p0))
        return pos


def stationary(origin=(0.0, 0.0, 0.5)):
    return _Stationary(origin=tuple(origin))


def cart_push(direction, speed: float, distance: float, ramp_time: float = 0.5,
              origin=(0.0, 0.0, 0.5)):
    """Hand-push style trajectory: ramp up, constant speed, ramp down.

    Total duration is distance/speed + ramp_time for the regular trapezoid
    (each ramp sheds speed*ramp_time/2 of travel versus full speed).
    """
    dx, dy = float(direction[0]), float(direction[1])
    norm = math.hypot(dx, dy)
    if not math.isclose(norm, 1.0, rel_tol=1e-9):
        if norm == 0:
            raise ValueError("direction must be a nonzero horizontal vector")
        dx, dy = dx / norm, dy / norm
    if distance == 0 or speed == 0:
        return stationary(origin)
    if speed < 0 or distance < 0:
        raise ValueError("speed and distance must be non-negative")
    ramp_dist = speed * ramp_time
    if distance >= ramp_dist:
        duration = distance / speed + ramp_time
    else:  # triangle profile: same ramp shape, lower peak
        duration = 2.0 * math.sqrt(distance * ramp_time / speed)
    return _CartPush(origin=tuple(origin), direction=(dx, dy), speed=speed,
                     distance=distance, ramp_time=ramp_time, duration=duration)


def slope_climb(slope_angle: float, step_length: float, dwell: float,
                n_steps: int, step_time: float = 1.0, origin=(0.0, 0.0, 0.5)):
    """Stop-and-go gait up a straight slope in the x-z plane."""
    if not 0.0 <= slope_angle < math.pi / 2:
        raise ValueError(f"slope angle {slope_angle} outside [0, pi/2)")
    if n_steps > 0 and not step_length > 0:
        raise ValueError("step_length must be positive")
    duration = n_steps * (step_time + dwell)
    return _SlopeClimb(origin=tuple(origin), slope_angle=slope_angle,
                       step_length=step_length, dwell=dwell, n_steps=int(n_steps),
                       step_time=step_time, duration=duration)


def waypoints(points, speed: float, dwell: float = 0.0, origin=(0.0, 0.0, 0.5)):
    """Move between waypoints at the given average speed with eased segments."""
    if not speed > 0:
        raise ValueError("speed must be positive")
    pts = [tuple(float(v) for v in p) for p in points]
    segments = []
    t0 = 0.0
    prev = tuple(origin)
    for p in pts:
        dist = math.dist(prev, p)
        seg_time = dist / speed
        segments.append((t0, seg_time, prev, p))
        t0 += seg_time + dwell
        prev = p
    return _Waypoints(origin=tuple(origin), points=tuple(pts), speed=speed,
                      dwell=dwell, duration=t0, segments=tuple(segments))


@dataclass(frozen=True)
class ScenarioConfig:
    trajectory: object
    plant: PlantConfig = PlantConfig()
    gains: PidGains = DEFAULT_GAINS
    geometry: StepperGeometry = DEFAULT_GEOMETRY
    duration: float = 10.0
    m_target: float = 2.039
    g_sim: float = 0.0
    size_counterweight: bool = True  # derive plant.m_cw from (m_target, g_sim)

    def __post_init__(self):
        if not self.duration > 0:
            raise ValueError("duration must be positive")
        if not 0.0 <= self.g_sim <= self.plant.g_earth:
            raise ValueError("g_sim outside [0, g_earth]")
