import math

import numpy as np
import pytest

from offloadsim.plant import G_EARTH
from offloadsim.scenarios import (
    ScenarioConfig,
    cart_push,
    counterweight_for_gravity,
    slope_climb,
    stationary,
    waypoints,
)


class TestCounterweightSizing:
    def test_moon(self):
        assert counterweight_for_gravity(6.0, G_EARTH / 6.0) == pytest.approx(5.0)

    def test_earth_gravity_means_no_offload(self):
        assert counterweight_for_gravity(3.0, G_EARTH) == 0.0

    def test_micro_gravity_full_offload(self):
        m_cw = counterweight_for_gravity(2.039, 0.0)
        assert m_cw == pytest.approx(2.039)
        assert m_cw * G_EARTH == pytest.approx(20.0, abs=0.01)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            counterweight_for_gravity(-1.0, 0.0)
        with pytest.raises(ValueError):
            counterweight_for_gravity(1.0, 2.0 * G_EARTH)

    def test_affine_in_mass_and_monotone_in_gravity(self):
        for g in np.linspace(0.0, G_EARTH, 7):
            assert counterweight_for_gravity(4.0, g) == pytest.approx(
                2.0 * counterweight_for_gravity(2.0, g))
        gs = np.linspace(0.0, G_EARTH, 9)
        ms = [counterweight_for_gravity(5.0, g) for g in gs]
        assert all(a >= b for a, b in zip(ms, ms[1:]))


class TestCartPush:
    def test_trapezoid_duration_and_endpoint(self):
        traj = cart_push([1.0, 0.0], 0.04, 1.0, 0.5)
        assert traj.duration == pytest.approx(25.5)
        p = traj(traj.duration)
        assert p[0] == pytest.approx(1.0, abs=1e-12)
        assert p[1] == 0.0

    def test_zero_distance_is_stationary(self):
        traj = cart_push([1.0, 0.0], 0.04, 0.0)
        assert np.allclose(traj(0.0), traj(10.0))

    def test_diagonal_direction(self):
        d = 1.0 / math.sqrt(2.0)
        traj = cart_push([d, d], 0.04, 1.0, 0.5)
        p = traj(traj.duration)
        assert p[0] == pytest.approx(0.70711, abs=1e-5)
        assert p[1] == pytest.approx(0.70711, abs=1e-5)

    def test_unnormalized_direction_is_normalized(self):
        traj = cart_push([2.0, 0.0], 0.04, 1.0, 0.5)
        assert traj(traj.duration)[0] == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_triangle_profile(self):
        # too short to reach cruise speed: still covers the distance
        traj = cart_push([1.0, 0.0], 0.1, 0.01, 1.0)
        assert traj(traj.duration)[0] == pytest.approx(0.01, abs=1e-12)
        mid = traj(traj.duration / 2.0)[0]
        assert mid == pytest.approx(0.005, abs=1e-9)

    def test_path_length_consistency(self):
        traj = cart_push([1.0, 0.0], 0.04, 1.0, 0.5)
        ts = np.linspace(0.0, traj.duration, 20_001)
        pts = np.array([traj(t) for t in ts])
        path = np.sum(np.linalg.norm(np.diff(pts, axis=0), axis=1))
        assert path == pytest.approx(1.0, rel=1e-3)

    def test_continuity(self):
        traj = cart_push([0.0, 1.0], 0.04, 0.5, 0.5)
        ts = np.linspace(-0.5, traj.duration + 0.5, 5000)
        pts = np.array([traj(t) for t in ts])
        assert np.max(np.linalg.norm(np.diff(pts, axis=0), axis=1)) < 1e-3


class TestSlopeClimb:
    def test_single_step_at_45_degrees(self):
        traj = slope_climb(math.radians(45.0), 0.02, 1.0, 1)
        p0 = traj(0.0)
        p1 = traj(traj.duration)
        assert p1[0] - p0[0] == pytest.approx(0.014142, abs=1e-6)
        assert p1[2] - p0[2] == pytest.approx(0.014142, abs=1e-6)

    def test_no_steps_is_stationary(self):
        traj = slope_climb(math.radians(45.0), 0.02, 1.0, 0)
        assert np.allclose(traj(0.0), traj(5.0))

    def test_flat_ground_degenerate(self):
        traj = slope_climb(0.0, 0.05, 0.5, 4)
        p = traj(traj.duration)
        assert p[0] == pytest.approx(0.2, abs=1e-12)
        assert p[2] == pytest.approx(0.5, abs=1e-12)

    def test_dwell_holds_position(self):
        traj = slope_climb(math.radians(30.0), 0.05, 2.0, 3, step_time=1.0)
        assert np.allclose(traj(1.0), traj(2.5))  # mid-dwell of step 1

    def test_rejects_bad_angle(self):
        with pytest.raises(ValueError):
            slope_climb(math.pi / 2, 0.02, 1.0, 3)


class TestWaypoints:
    def test_visits_points_in_order(self):
        traj = waypoints([(0.1, 0.0, 0.5), (0.1, 0.2, 0.5)], speed=0.1,
                         dwell=0.5, origin=(0.0, 0.0, 0.5))
        end = traj(traj.duration + 1.0)
        assert np.allclose(end, [0.1, 0.2, 0.5], atol=1e-12)

    def test_starts_at_origin(self):
        traj = waypoints([(0.3, 0.0, 0.5)], speed=0.1)
        assert np.allclose(traj(0.0), [0.0, 0.0, 0.5])

    def test_determinism(self):
        traj = waypoints([(0.2, -0.1, 0.5)], speed=0.05)
        for t in (0.0, 0.7, 1.9, 10.0):
            assert np.allclose(traj(t), traj(t))


class TestScenarioConfig:
    def test_rejects_nonpositive_duration(self):
        with pytest.raises(ValueError):
            ScenarioConfig(trajectory=stationary(), duration=0.0)

    def test_rejects_gravity_out_of_range(self):
        with pytest.raises(ValueError):
            ScenarioConfig(trajectory=stationary(), g_sim=20.0)
