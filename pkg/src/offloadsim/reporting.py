"""Telemetry records, summary statistics and file emission.

Angles are radians inside the package and degrees in every emitted file.
All file output is deterministic: fixed column order, 9 significant digits,
LF line endings.
"""

import math
from dataclasses import dataclass
from pathlib import Path

__all__ = [
    "MetricsRecord",
    "SummaryStats",
    "EmptyRun",
    "summarize",
    "write_csv",
    "read_csv",
    "write_summary",
    "emit_plot_data",
    "CSV_COLUMNS",
]

ANGLE_PASS_DEG = 1.0          # |alpha| threshold [deg]
FORCE_PASS_N = 0.5            # horizontal force threshold [N]


class EmptyRun(ValueError):
    """An operation that needs telemetry was given no records."""


@dataclass(frozen=True)
class MetricsRecord:
    t: float
    target_x: float
    target_y: float
    target_z: float
    tracker_x: float
    tracker_y: float
    theta: float        # true tilt [rad]
    phi: float
    theta_meas: float   # encoder-quantized tilt [rad]
    phi_meas: float
    belt_a: float
    belt_b: float
    tension: float
    fx: float
    fy: float
    fz: float
    alpha: float        # force angle from vertical [rad]
    cmd_vx: float
    cmd_vy: float
    saturated: bool


@dataclass(frozen=True)
class SummaryStats:
    max_alpha_deg: float
    mean_alpha_deg: float
    rms_alpha_deg: float
    max_horizontal_force_n: float
    mean_target_speed: float
    pass_angle: bool
    pass_force: bool
    duration: float


def summarize(records: list[MetricsRecord]) -> SummaryStats:
    """Reduce a telemetry series to the pass/fail statistics."""
    if not records:
        raise EmptyRun("cannot summarize an empty run")
    alphas = [math.degrees(abs(r.alpha)) for r in records]
    max_alpha = max(alphas)
    mean_alpha = sum(alphas) / len(alphas)
    rms_alpha = math.sqrt(sum(a * a for a in alphas) / len(alphas))
    max_h = max(math.hypot(r.fx, r.fy) for r in records)

    # mean speed while the target is actually moving (idle samples excluded)
    path = 0.0
    moving_time = 0.0
    for prev, cur in zip(records, records[1:]):
        d = math.dist(
            (prev.target_x, prev.target_y, prev.target_z),
            (cur.target_x, cur.target_y, cur.target_z),
        )
        if d > 0.0:
            path += d
            moving_time += cur.t - prev.t
    duration = records[-1].t - records[0].t
    mean_speed = path / moving_time if moving_time > 0 else 0.0

    return SummaryStats(
        max_alpha_deg=max_alpha,
        mean_alpha_deg=mean_alpha,
        rms_alpha_deg=rms_alpha,
        max_horizontal_force_n=max_h,
        mean_target_speed=mean_speed,
        pass_angle=max_alpha <= ANGLE_PASS_DEG,
        pass_force=max_h <= FORCE_PASS_N,
        duration=duration,
    )


CSV_COLUMNS = [
    "t_s", "target_x_m", "target_y_m", "target_z_m",
    "tracker_x_m", "tracker_y_m",
    "theta_deg", "phi_deg", "theta_meas_deg", "phi_meas_deg",
    "belt_a_m", "belt_b_m", "tension_n",
    "fx_n", "fy_n", "fz_n", "alpha_deg",
    "cmd_vx_mps", "cmd_vy_mps", "saturated",
]


def _fmt(v: float) -> str:
    return "%.9g" % v


def _row(r: MetricsRecord) -> list[str]:
    return [
        _fmt(r.t), _fmt(r.target_x), _fmt(r.target_y), _fmt(r.target_z),
        _fmt(r.tracker_x), _fmt(r.tracker_y),
        _fmt(math.degrees(r.theta)), _fmt(math.degrees(r.phi)),
        _fmt(math.degrees(r.theta_meas)), _fmt(math.degrees(r.phi_meas)),
        _fmt(r.belt_a), _fmt(r.belt_b), _fmt(r.tension),
        _fmt(r.fx), _fmt(r.fy), _fmt(r.fz), _fmt(math.degrees(r.alpha)),
        _fmt(r.cmd_vx), _fmt(r.cmd_vy),
        "1" if r.saturated else "0",
    ]


def write_csv(records: list[MetricsRecord], path) -> None:
    """Emit the telemetry series as a deterministic CSV file."""
    path = Path(path)
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(",".join(CSV_COLUMNS) + "\n")
            for r in records:
                fh.write(",".join(_row(r)) + "\n")
    except OSError as exc:
        raise OSError(f"failed writing telemetry to {path}: {exc}") from exc


def read_csv(path) -> list[MetricsRecord]:
    """Parse a telemetry CSV back into records (degrees converted to radians)."""
    path = Path(path)
    records = []
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if header != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header in {path}")
        for line in fh:
            v = line.strip().split(",")
            records.append(MetricsRecord(
                t=float(v[0]),
                target_x=float(v[1]), target_y=float(v[2]), target_z=float(v[3]),
                tracker_x=float(v[4]), tracker_y=float(v[5]),
                theta=math.radians(float(v[6])), phi=math.radians(float(v[7])),
                theta_meas=math.radians(float(v[8])),
                phi_meas=math.radians(float(v[9])),
                belt_a=float(v[10]), belt_b=float(v[11]), tension=float(v[12]),
                fx=float(v[13]), fy=float(v[14]), fz=float(v[15]),
                alpha=math.radians(float(v[16])),
                cmd_vx=float(v[17]), cmd_vy=float(v[18]),
                saturated=v[19] == "1",
            ))
    return records


def write_summary(stats: SummaryStats, path) -> None:
    """Emit summary statistics as a small key = value text file."""
    path = Path(path)
    lines = [
        f"max_alpha_deg = {_fmt(stats.max_alpha_deg)}",
        f"mean_alpha_deg = {_fmt(stats.mean_alpha_deg)}",
        f"rms_alpha_deg = {_fmt(stats.rms_alpha_deg)}",
        f"max_horizontal_force_n = {_fmt(stats.max_horizontal_force_n)}",
        f"mean_target_speed_mps = {_fmt(stats.mean_target_speed)}",
        f"pass_angle = {str(stats.pass_angle).lower()}",
        f"pass_force = {str(stats.pass_force).lower()}",
        f"duration_s = {_fmt(stats.duration)}",
    ]
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"failed writing summary to {path}: {exc}") from exc


def emit_plot_data(records: list[MetricsRecord], out_dir) -> dict[str, Path]:
    """Write plot-ready series files: force angle vs time and horizontal
    force components vs time."""
    if not records:
        raise EmptyRun("cannot emit plot data for an empty run")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    alpha_path = out_dir / "alpha_deg.dat"
    force_path = out_dir / "horizontal_force.dat"
    with open(alpha_path, "w", newline="\n") as fh:
        fh.write("# t_s alpha_deg\n")
        for r in records:
            fh.write(f"{_fmt(r.t)} {_fmt(math.degrees(r.alpha))}\n")
    with open(force_path, "w", newline="\n") as fh:
        fh.write("# t_s fx_n fy_n\n")
        for r in records:
            fh.write(f"{_fmt(r.t)} {_fmt(r.fx)} {_fmt(r.fy)}\n")
    return {"alpha": alpha_path, "force": force_path}
