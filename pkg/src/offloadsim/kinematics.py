"""Geometric maps between cable tilt, tracker displacement, belt feeds and steps.

Conventions (right-handed world frame, x forward, y left, z up):
with horizontal offset d = (x_t - x_tr, y_t - y_tr) of the target relative
to the tracker and cable length l, sin(theta) = -d_x / l and
sin(phi) = d_y / l.  Under this convention the displacement
(dx, dy) = (-l sin(theta), l sin(phi)) moves the tracker exactly above the
target attachment point, re-verticalizing the cable.
"""

import math
from dataclasses import dataclass

__all__ = [
    "CableTilt",
    "PlanarDisplacement",
    "BeltFeeds",
    "StepperGeometry",
    "DEFAULT_GEOMETRY",
    "tilt_to_displacement",
    "displacement_to_feeds",
    "feeds_to_displacement",
    "quantize_feed",
]


class KinematicsError(ValueError):
    """Invalid geometric input (violated invariant or degenerate state)."""


@dataclass(frozen=True)
class CableTilt:
    """Pitch/roll tilt of the cable from vertical plus cable length."""

    theta: float  # pitch tilt, x-z plane [rad]
    phi: float    # roll tilt, y-z plane [rad]
    l: float      # cable length, tracker pulley to attachment [m]

    def validate(self):
        if not (self.l > 0):
            raise KinematicsError(f"cable length must be positive, got {self.l}")
        if not (abs(self.theta) < math.pi / 2 and abs(self.phi) < math.pi / 2):
            raise KinematicsError(
                f"tilt angles must lie in (-pi/2, pi/2): theta={self.theta}, phi={self.phi}"
            )
        s2 = math.sin(self.theta) ** 2 + math.sin(self.phi) ** 2
        # both projections come from one unit cable direction
        if s2 > 1.0 + 1e-12:
            raise KinematicsError(f"sin^2(theta) + sin^2(phi) = {s2} exceeds 1")


@dataclass(frozen=True)
class PlanarDisplacement:
    dx: float  # [m]
    dy: float  # [m]


@dataclass(frozen=True)
class BeltFeeds:
    da: float  # left-motor belt feed [m]
    db: float  # right-motor belt feed [m]


@dataclass(frozen=True)
class StepperGeometry:
    feed_per_step: float  # [m/step]
    max_step_rate: float  # [steps/s]

    def __post_init__(self):
        if not (self.feed_per_step > 0 and self.max_step_rate > 0):
            raise KinematicsError(
                "feed_per_step and max_step_rate must be positive, got "
                f"{self.feed_per_step}, {self.max_step_rate}"
            )

    @property
    def max_belt_speed(self) -> float:
        """Maximum belt speed in m/s."""
        return self.feed_per_step * self.max_step_rate


# 40 mm belt feed per rev, 200 full steps x 16 microsteps -> 12.5 um/step;
# 20 000 steps/s gives 0.25 m/s belt speed.
DEFAULT_GEOMETRY = StepperGeometry(feed_per_step=12.5e-6, max_step_rate=20_000.0)


def tilt_to_displacement(t: CableTilt) -> PlanarDisplacement:
    """Tracker displacement that sets the cable tilt back to zero."""
    t.validate()
    return PlanarDisplacement(dx=-t.l * math.sin(t.theta), dy=t.l * math.sin(t.phi))


def displacement_to_feeds(d: PlanarDisplacement) -> BeltFeeds:
    """Map a planar tracker displacement to the two belt feeds."""
    if not (math.isfinite(d.dx) and math.isfinite(d.dy)):
        raise KinematicsError(f"non-finite displacement: {d}")
    return BeltFeeds(da=d.dx - d.dy, db=-d.dx - d.dy)


def feeds_to_displacement(f: BeltFeeds) -> PlanarDisplacement:
    """Exact inverse of displacement_to_feeds."""
    if not (math.isfinite(f.da) and math.isfinite(f.db)):
        raise KinematicsError(f"non-finite feeds: {f}")
    return PlanarDisplacement(dx=(f.da - f.db) / 2.0, dy=-(f.da + f.db) / 2.0)


def quantize_feed(feed: float, g: StepperGeometry) -> tuple[int, float]:
    """Split a belt feed into whole motor steps plus a sub-step residual.

    Rounds toward zero; the residual must be carried by the caller into the
    next command so no commanded feed is ever lost.
    """
    steps = math.trunc(feed / g.feed_per_step)
    residual = feed - steps * g.feed_per_step
    return steps, residual
