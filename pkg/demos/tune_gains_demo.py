"""Gain-tuning demo: the grid search that froze the shipped PID defaults.

Sweeps kp/ki/kd on the 4 cm/s cart-push scenario, minimizing the worst
force angle from vertical, and prints the per-candidate table.
"""

from offloadsim import ScenarioConfig, cart_push, tune_gains

traj = cart_push(direction=[1.0, 0.0], speed=0.04, distance=1.0,
                 ramp_time=0.5)
scenario = ScenarioConfig(trajectory=traj, duration=traj.duration + 1.0,
                          m_target=2.039, g_sim=0.0)

grid = {
    "kp": [2.0, 4.0, 8.0, 12.0],
    "ki": [0.0, 2.0],
    "kd": [0.0, 0.1],
}

best, report = tune_gains(scenario, grid)

print(f"{'kp':>6} {'ki':>6} {'kd':>6} {'max_alpha_deg':>14}")
for row in report:
    print(f"{row['kp']:>6g} {row['ki']:>6g} {row['kd']:>6g} "
          f"{row['max_alpha_deg']:>14.5f}")
print(f"\nbest gains: kp={best.kp:g}, ki={best.ki:g}, kd={best.kd:g}")
