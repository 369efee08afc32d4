"""Command-line surface: simulate, batch, sweep, tune, size-counterweight.

Exit codes: 0 on a completed run with both fidelity thresholds met, 1 when a
threshold fails, 2 on any error.
"""

import argparse
import copy
import json
import sys
from pathlib import Path

from .config import ConfigError, build_sim_config, gravity_preset, load_config
from .controller import NoFeasibleGains, tune_gains
from .engine import Termination, run, run_batch
from .plant import G_EARTH
from .reporting import emit_plot_data, write_csv, write_summary
from .scenarios import counterweight_for_gravity

EXIT_OK = 0
EXIT_THRESHOLD = 1
EXIT_ERROR = 2


def _write_outputs(result, out_dir: Path):
    out_dir.mkdir(parents=True, exist_ok=True)
    write_csv(result.records, out_dir / "records.csv")
    if result.summary is not None:
        write_summary(result.summary, out_dir / "summary.txt")
    if result.records:
        emit_plot_data(result.records, out_dir)


def _report(result, label=""):
    prefix = f"[{label}] " if label else ""
    if result.termination is not Termination.COMPLETED:
        print(f"{prefix}FAILED: {result.termination.value}: {result.error}")
        return EXIT_ERROR
    s = result.summary
    print(f"{prefix}max |alpha| = {s.max_alpha_deg:.4f} deg "
          f"(pass: {s.pass_angle}), max horizontal force = "
          f"{s.max_horizontal_force_n:.4f} N (pass: {s.pass_force})")
    return EXIT_OK if (s.pass_angle and s.pass_force) else EXIT_THRESHOLD


def _cmd_simulate(args):
    cfg = load_config(args.config)
    result = run(cfg)
    _write_outputs(result, Path(args.out))
    return _report(result)


def _cmd_batch(args):
    cfg_dir = Path(args.configs)
    paths = sorted(cfg_dir.glob("*.json"))
    if not paths:
        print(f"no *.json configs found in {cfg_dir}", file=sys.stderr)
        return EXIT_ERROR
    cfgs = []
    labels = []
    rc = EXIT_OK
    for p in paths:
        try:
            cfgs.append(load_config(p))
            labels.append(p.stem)
        except ConfigError as exc:
            print(f"[{p.stem}] FAILED: {exc}")
            rc = EXIT_ERROR
    results = run_batch(cfgs)
    out_root = Path(args.out)
    for label, result in zip(labels, results):
        _write_outputs(result, out_root / label)
        rc = max(rc, _report(result, label))
    return rc


def _set_by_path(doc: dict, dotted: str, value):
    keys = dotted.split(".")
    node = doc
    for k in keys[:-1]:
        node = node.setdefault(k, {})
    node[keys[-1]] = value


def _parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _cmd_sweep(args):
    base = json.loads(Path(args.config).read_text())
    values = [_parse_value(v) for v in args.values.split(",")]
    out_root = Path(args.out)
    rc = EXIT_OK
    for value in values:
        doc = copy.deepcopy(base)
        _set_by_path(doc, args.param, value)
        label = f"{args.param}={value}"
        try:
            cfg = build_sim_config(doc)
        except (ConfigError, ValueError) as exc:
            print(f"[{label}] FAILED: {exc}")
            rc = EXIT_ERROR
            continue
        result = run(cfg)
        _write_outputs(result, out_root / label)
        rc = max(rc, _report(result, label))
    return rc


def _cmd_tune(args):
    cfg = load_config(args.config)
    grid = json.loads(Path(args.grid).read_text())
    best, report = tune_gains(cfg.scenario, grid,
                              run_fn=lambda c: run(
                                  type(c)(scenario=c.scenario,
                                          dt_phys=cfg.dt_phys,
                                          ctrl_divisor=cfg.ctrl_divisor,
                                          record_divisor=cfg.record_divisor,
                                          initial_tracker_offset=cfg.initial_tracker_offset,
                                          controller_l_scale=cfg.controller_l_scale)))
    print(f"{'kp':>8} {'ki':>8} {'kd':>8} {'max_alpha_deg':>14} {'max_h_force_n':>14}")
    for row in report:
        print(f"{row['kp']:>8g} {row['ki']:>8g} {row['kd']:>8g} "
              f"{row['max_alpha_deg']:>14.5f} {row['max_horizontal_force_n']:>14.5f}")
    print(f"best: kp={best.kp:g} ki={best.ki:g} kd={best.kd:g}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "tune_report.csv", "w", newline="\n") as fh:
            fh.write("kp,ki,kd,feasible,max_alpha_deg,max_horizontal_force_n\n")
            for row in report:
                fh.write(f"{row['kp']:g},{row['ki']:g},{row['kd']:g},"
                         f"{int(row['feasible'])},{row['max_alpha_deg']:.9g},"
                         f"{row['max_horizontal_force_n']:.9g}\n")
    return EXIT_OK


def _cmd_size_counterweight(args):
    g_sim = gravity_preset(args.gravity)
    m_cw = counterweight_for_gravity(args.mass, g_sim)
    offload = m_cw * G_EARTH
    print(f"m_cw = {m_cw:.6g} kg (vertical offload {offload:.6g} N, "
          f"simulated gravity {g_sim:.6g} m/s^2)")
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="offloadsim",
        description="Closed-loop simulator of a CoreXY gravity-offloading "
                    "testbed with a counterweight cable.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one configuration")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("batch", help="run every *.json config in a directory")
    p.add_argument("--configs", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_batch)

    p = sub.add_parser("sweep", help="run one config across parameter values")
    p.add_argument("--config", required=True)
    p.add_argument("--param", required=True,
                   help="dotted config key, e.g. trajectory.speed_mps")
    p.add_argument("--values", required=True, help="comma-separated values")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("tune", help="grid-search PID gains on a scenario")
    p.add_argument("--config", required=True)
    p.add_argument("--grid", required=True,
                   help="JSON file mapping kp/ki/kd to candidate lists")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_tune)

    p = sub.add_parser("size-counterweight",
                       help="counterweight mass for a simulated gravity")
    p.add_argument("--mass", type=float, required=True, help="target mass [kg]")
    p.add_argument("--gravity", required=True,
                   help="moon | mars | micro | earth | value in m/s^2")
    p.set_defaults(fn=_cmd_size_counterweight)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, NoFeasibleGains, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
