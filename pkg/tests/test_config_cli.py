import json
import math

import pytest

from offloadsim.cli import main
from offloadsim.config import (
    ConfigError,
    GRAVITY_PRESETS,
    build_sim_config,
    gravity_preset,
    load_config,
)
from offloadsim.plant import G_EARTH, TensionModel


BASE_DOC = {
    "trajectory": {"kind": "cart_push", "direction": [1.0, 0.0],
                   "speed_mps": 0.04, "distance_m": 0.3, "ramp_time_s": 0.5},
    "target": {"mass_kg": 2.039, "g_sim": "micro"},
    "run": {"record_divisor": 10},
}


def write_config(tmp_path, doc, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


class TestGravityPresets:
    def test_values(self):
        assert GRAVITY_PRESETS["moon"] == pytest.approx(G_EARTH / 6.0)
        assert GRAVITY_PRESETS["mars"] == pytest.approx(3.0 * G_EARTH / 8.0)
        assert GRAVITY_PRESETS["micro"] == 0.0

    def test_numeric_passthrough(self):
        assert gravity_preset(1.62) == 1.62

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            gravity_preset("jupiter")


class TestConfigLoading:
    def test_minimal_document(self):
        cfg = build_sim_config(BASE_DOC)
        assert cfg.scenario.g_sim == 0.0
        assert cfg.scenario.m_target == 2.039
        assert cfg.dt_phys == 1e-3

    def test_unknown_root_key_rejected(self):
        doc = dict(BASE_DOC, physics={"dt": 1})
        with pytest.raises(ConfigError, match="physics"):
            build_sim_config(doc)

    def test_unknown_nested_key_rejected(self):
        doc = json.loads(json.dumps(BASE_DOC))
        doc["gains"] = {"kP": 8.0}  # typo must not silently default
        with pytest.raises(ConfigError, match="kP"):
            build_sim_config(doc)

    def test_degrees_at_boundary(self):
        doc = json.loads(json.dumps(BASE_DOC))
        doc["gains"] = {"deadband_deg": 0.5}
        cfg = build_sim_config(doc)
        assert cfg.scenario.gains.deadband == pytest.approx(math.radians(0.5))

    def test_explicit_counterweight_disables_sizing(self):
        doc = json.loads(json.dumps(BASE_DOC))
        doc["plant"] = {"m_cw_kg": 1.25}
        cfg = build_sim_config(doc)
        assert not cfg.scenario.size_counterweight
        assert cfg.scenario.plant.m_cw == 1.25

    def test_tension_model_parse(self):
        doc = json.loads(json.dumps(BASE_DOC))
        doc["plant"] = {"tension_model": "dynamic"}
        cfg = build_sim_config(doc)
        assert cfg.scenario.plant.tension_model is TensionModel.DYNAMIC

    def test_slope_trajectory(self):
        doc = {
            "trajectory": {"kind": "slope_climb", "slope_angle_deg": 45.0,
                           "step_length_m": 0.02, "dwell_s": 1.0,
                           "n_steps": 3},
            "target": {"mass_kg": 6.0, "g_sim": "moon"},
        }
        cfg = build_sim_config(doc)
        assert cfg.scenario.g_sim == pytest.approx(G_EARTH / 6.0)

    def test_load_config_file(self, tmp_path):
        cfg = load_config(write_config(tmp_path, BASE_DOC))
        assert cfg.scenario.duration > 0

    def test_bad_json_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            load_config(path)


class TestCli:
    def test_simulate_passing_run(self, tmp_path, capsys):
        cfg_path = write_config(tmp_path, BASE_DOC)
        out = tmp_path / "out"
        rc = main(["simulate", "--config", str(cfg_path), "--out", str(out)])
        assert rc == 0
        assert (out / "records.csv").exists()
        assert (out / "summary.txt").exists()
        assert (out / "alpha_deg.dat").exists()
        assert "pass: True" in capsys.readouterr().out

    def test_simulate_threshold_failure_exit_1(self, tmp_path):
        doc = json.loads(json.dumps(BASE_DOC))
        doc["gains"] = {"kp": 0.0, "ki": 0.0, "kd": 0.0}  # no tracking at all
        doc["trajectory"]["distance_m"] = 0.5
        cfg_path = write_config(tmp_path, doc)
        rc = main(["simulate", "--config", str(cfg_path),
                   "--out", str(tmp_path / "out")])
        assert rc == 1

    def test_simulate_config_error_exit_2(self, tmp_path):
        cfg_path = write_config(tmp_path, {"trajectory": {"kind": "warp"}})
        rc = main(["simulate", "--config", str(cfg_path),
                   "--out", str(tmp_path / "out")])
        assert rc == 2

    def test_batch(self, tmp_path):
        cfg_dir = tmp_path / "cfgs"
        cfg_dir.mkdir()
        for i, v in enumerate((0.029, 0.04)):
            doc = json.loads(json.dumps(BASE_DOC))
            doc["trajectory"]["speed_mps"] = v
            write_config(cfg_dir, doc, name=f"speed{i}.json")
        out = tmp_path / "out"
        rc = main(["batch", "--configs", str(cfg_dir), "--out", str(out)])
        assert rc == 0
        assert (out / "speed0" / "records.csv").exists()
        assert (out / "speed1" / "records.csv").exists()

    def test_sweep(self, tmp_path):
        cfg_path = write_config(tmp_path, BASE_DOC)
        out = tmp_path / "sweep"
        rc = main(["sweep", "--config", str(cfg_path),
                   "--param", "trajectory.speed_mps",
                   "--values", "0.029,0.04,0.043", "--out", str(out)])
        assert rc == 0
        assert len(list(out.iterdir())) == 3

    def test_tune(self, tmp_path, capsys):
        doc = json.loads(json.dumps(BASE_DOC))
        doc["trajectory"]["distance_m"] = 0.1
        cfg_path = write_config(tmp_path, doc)
        grid_path = tmp_path / "grid.json"
        grid_path.write_text(json.dumps({"kp": [4.0, 8.0]}))
        out = tmp_path / "tune"
        rc = main(["tune", "--config", str(cfg_path), "--grid",
                   str(grid_path), "--out", str(out)])
        assert rc == 0
        assert "best:" in capsys.readouterr().out
        assert (out / "tune_report.csv").exists()

    def test_size_counterweight_moon(self, capsys):
        rc = main(["size-counterweight", "--mass", "6", "--gravity", "moon"])
        assert rc == 0
        assert "m_cw = 5 kg" in capsys.readouterr().out

    def test_size_counterweight_numeric(self, capsys):
        rc = main(["size-counterweight", "--mass", "2.039",
                   "--gravity", "micro"])
        assert rc == 0
        out = capsys.readouterr().out
        offload = float(out.split("offload")[1].split("N")[0])
        assert offload == pytest.approx(20.0, abs=0.01)

    def test_size_counterweight_bad_gravity(self, capsys):
        rc = main(["size-counterweight", "--mass", "2", "--gravity", "pluto"])
        assert rc == 2
