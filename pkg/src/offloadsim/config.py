"""Run-configuration files: one JSON document per run, SI units, angles in
degrees at this boundary.  Unknown keys are rejected so a typo in an
experiment definition fails fast instead of silently using a default.
"""

import json
import math
from pathlib import Path

from .controller import PidGains
from .engine import SimConfig
from .kinematics import StepperGeometry, DEFAULT_GEOMETRY
from .plant import PlantConfig, TensionModel, G_EARTH
from .scenarios import (
    ScenarioConfig,
    cart_push,
    slope_climb,
    stationary,
    waypoints,
)

__all__ = ["ConfigError", "load_config", "build_sim_config", "gravity_preset",
           "GRAVITY_PRESETS"]


class ConfigError(ValueError):
    pass


GRAVITY_PRESETS = {
    "moon": G_EARTH / 6.0,
    "mars": 3.0 * G_EARTH / 8.0,
    "micro": 0.0,
    "earth": G_EARTH,
}


def gravity_preset(value, g_earth: float = G_EARTH) -> float:
    """Resolve a gravity spec: a preset name or a numeric value in m/s^2."""
    if isinstance(value, str):
        key = value.lower()
        if key not in GRAVITY_PRESETS:
            raise ConfigError(
                f"unknown gravity preset {value!r}; expected one of "
                f"{sorted(GRAVITY_PRESETS)} or a number")
        return GRAVITY_PRESETS[key] * (g_earth / G_EARTH)
    return float(value)


def _check_keys(section: dict, allowed: set, where: str):
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {sorted(unknown)}")


def _build_trajectory(spec: dict):
    kind = spec.get("kind")
    if kind is None:
        raise ConfigError("trajectory.kind is required")
    origin = spec.get("origin_m", [0.0, 0.0, 0.5])
    if kind == "stationary":
        _check_keys(spec, {"kind", "origin_m"}, "trajectory")
        return stationary(origin)
    if kind == "cart_push":
        _check_keys(spec, {"kind", "origin_m", "direction", "speed_mps",
                           "distance_m", "ramp_time_s"}, "trajectory")
        return cart_push(direction=spec.get("direction", [1.0, 0.0]),
                         speed=spec["speed_mps"],
                         distance=spec["distance_m"],
                         ramp_time=spec.get("ramp_time_s", 0.5),
                         origin=origin)
    if kind == "slope_climb":
        _check_keys(spec, {"kind", "origin_m", "slope_angle_deg",
                           "step_length_m", "dwell_s", "n_steps",
                           "step_time_s"}, "trajectory")
        return slope_climb(slope_angle=math.radians(spec["slope_angle_deg"]),
                           step_length=spec["step_length_m"],
                           dwell=spec.get("dwell_s", 1.0),
                           n_steps=spec["n_steps"],
                           step_time=spec.get("step_time_s", 1.0),
                           origin=origin)
    if kind == "waypoints":
        _check_keys(spec, {"kind", "origin_m", "points_m", "speed_mps",
                           "dwell_s"}, "trajectory")
        return waypoints(points=spec["points_m"],
                         speed=spec["speed_mps"],
                         dwell=spec.get("dwell_s", 0.0),
                         origin=origin)
    raise ConfigError(f"unknown trajectory kind {kind!r}")


def build_sim_config(doc: dict) -> SimConfig:
    """Build a SimConfig from a parsed configuration document."""
    _check_keys(doc, {"trajectory", "plant", "gains", "geometry", "target",
                      "run"}, "config root")
    if "trajectory" not in doc:
        raise ConfigError("trajectory section is required")
    traj = _build_trajectory(doc["trajectory"])

    p = doc.get("plant", {})
    _check_keys(p, {"z_rail_m", "m_cw_kg", "g_earth", "cable_total_m",
                    "tension_model", "encoder_counts_per_rev",
                    "encoder_noise_sigma_deg", "noise_seed"}, "plant")
    g_earth = p.get("g_earth", G_EARTH)
    try:
        tension_model = TensionModel(p.get("tension_model", "quasi_static"))
    except ValueError:
        raise ConfigError(
            f"unknown tension_model {p.get('tension_model')!r}") from None
    plant = PlantConfig(
        z_rail=p.get("z_rail_m", 2.5),
        m_cw=p.get("m_cw_kg", 1.0),  # placeholder if sizing is on
        g_earth=g_earth,
        cable_total=p.get("cable_total_m", 6.0),
        tension_model=tension_model,
        encoder_resolution=2.0 * math.pi / p.get("encoder_counts_per_rev", 4096),
        encoder_noise_sigma=math.radians(p.get("encoder_noise_sigma_deg", 0.0)),
        noise_seed=p.get("noise_seed", 0),
    )

    gns = doc.get("gains", {})
    _check_keys(gns, {"kp", "ki", "kd", "integral_limit_m", "deadband_deg"},
                "gains")
    gains = PidGains(
        kp=gns.get("kp", 8.0),
        ki=gns.get("ki", 2.0),
        kd=gns.get("kd", 0.1),
        integral_limit=gns.get("integral_limit_m", 0.05),
        deadband=math.radians(gns.get("deadband_deg", 0.0)),
    )

    geo = doc.get("geometry", {})
    _check_keys(geo, {"feed_per_step_m", "max_step_rate_hz"}, "geometry")
    geometry = StepperGeometry(
        feed_per_step=geo.get("feed_per_step_m", DEFAULT_GEOMETRY.feed_per_step),
        max_step_rate=geo.get("max_step_rate_hz", DEFAULT_GEOMETRY.max_step_rate),
    )

    tgt = doc.get("target", {})
    _check_keys(tgt, {"mass_kg", "g_sim"}, "target")
    m_target = tgt.get("mass_kg", 2.039)
    g_sim = gravity_preset(tgt.get("g_sim", 0.0), g_earth)
    size_cw = "m_cw_kg" not in p

    r = doc.get("run", {})
    _check_keys(r, {"duration_s", "dt_phys_s", "ctrl_divisor",
                    "record_divisor", "initial_tracker_offset_m",
                    "controller_l_scale"}, "run")
    scenario = ScenarioConfig(
        trajectory=traj,
        plant=plant,
        gains=gains,
        geometry=geometry,
        duration=r.get("duration_s", max(traj.duration + 2.0, 5.0)),
        m_target=m_target,
        g_sim=g_sim,
        size_counterweight=size_cw,
    )
    offset = r.get("initial_tracker_offset_m", [0.0, 0.0])
    return SimConfig(
        scenario=scenario,
        dt_phys=r.get("dt_phys_s", 1e-3),
        ctrl_divisor=r.get("ctrl_divisor", 10),
        record_divisor=r.get("record_divisor", 10),
        initial_tracker_offset=(float(offset[0]), float(offset[1])),
        controller_l_scale=r.get("controller_l_scale", 1.0),
    )


def load_config(path) -> SimConfig:
    """Read and validate a JSON run configuration file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"config root must be an object in {path}")
    try:
        return build_sim_config(doc)
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"invalid configuration {path}: {exc}") from exc
