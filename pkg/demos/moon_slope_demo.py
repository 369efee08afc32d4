"""Lunar slope-climb demo.

A 6 kg climbing robot takes stop-and-go steps up a 45 degree slope while the
counterweight is sized for Moon gravity (1/6 G).  The controller is also run
with a deliberately wrong idea of the cable length (+/-20%) to show the
tracking loop absorbs that mismatch.
"""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from offloadsim import (
    G_EARTH,
    ScenarioConfig,
    SimConfig,
    counterweight_for_gravity,
    run,
    slope_climb,
)

OUT = Path(__file__).parent / "out" / "moon_slope"
OUT.mkdir(parents=True, exist_ok=True)

m_robot = 6.0
g_moon = G_EARTH / 6.0
print(f"counterweight for Moon gravity on a {m_robot} kg robot: "
      f"{counterweight_for_gravity(m_robot, g_moon):.3f} kg")

traj = slope_climb(slope_angle=math.radians(45.0), step_length=0.05,
                   dwell=1.0, n_steps=10)
scenario = ScenarioConfig(trajectory=traj, duration=traj.duration + 1.0,
                          m_target=m_robot, g_sim=g_moon)

fig, ax = plt.subplots(figsize=(8, 4))
for l_scale in (0.8, 1.0, 1.2):
    result = run(SimConfig(scenario=scenario, controller_l_scale=l_scale))
    s = result.summary
    print(f"controller cable-length scale {l_scale:.1f}: "
          f"max|alpha| = {s.max_alpha_deg:.4f} deg")
    t = np.array([r.t for r in result.records])
    alpha = np.degrees([r.alpha for r in result.records])
    ax.plot(t, alpha, label=f"l scale {l_scale:.1f}")

ax.axhline(1.0, color="k", ls="--", lw=0.8)
ax.set_xlabel("time [s]")
ax.set_ylabel("force angle from vertical [deg]")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "moon_slope.png", dpi=120)
print(f"wrote {OUT}/moon_slope.png")
