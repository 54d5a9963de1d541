"""Command-line entry point: ``cadel-sim <subcommand> ...``.

Exit codes: 0 success, 1 domain error (Infeasible, NoConvergence,
RoMViolation, DegenerateGeometry), 2 usage or config error.  Angles are
degrees, masses kg, times seconds.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace

import numpy as np

from .configfile import dump_config, dumps_config, load_config
from .errors import CadelError, ConfigError, InvalidGeometry
from .geometry import JointState, Version, build_preset
from .harness import (
    DEFAULT_LOADS,
    ExperimentSpec,
    format_mass,
    record_filename,
    resolve_device,
    resolve_out_dir,
    run_sweep,
    summarize,
    write_record_csv,
    write_svg_plot,
    write_torque_curve_csv,
    write_workspace_csv,
)
from .kinematics import cable_jacobian, inverse_kinematics
from .simulation import ControllerConfig, TrajectorySpec, simulate_exercise
from .statics import LoadCase
from .workspace import DEFAULT_RESOLUTION, cos_fit, exercise_alphas, torque_vs_angle, workspace_map


def _mass_list(text: str) -> list[float]:
    try:
        values = [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid load list {text!r}") from None
    if not values or any(not math.isfinite(v) or v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"load list must be nonempty, finite and >= 0: {text!r}")
    return values


def _nonneg(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not math.isfinite(value) or value < 0:
        raise argparse.ArgumentTypeError(f"must be finite and >= 0: {text!r}")
    return value


def _device_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--preset", choices=[v.value for v in Version], default=Version.LCADEL.value)
    g.add_argument("--config", help="device config file (overrides --preset)")


def _load_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--forearm-mass", type=_nonneg, default=LoadCase().forearm_mass, help="kg")
    p.add_argument("--forearm-com", type=float, default=LoadCase().forearm_com_distance, help="m")
    p.add_argument("--payload-distance", type=float, default=LoadCase().payload_distance, help="m")


def _exercise_args(p: argparse.ArgumentParser) -> None:
    traj, ctl = TrajectorySpec(), ControllerConfig()
    p.add_argument("--alpha-start", type=float, default=math.degrees(traj.alpha_start), help="deg")
    p.add_argument("--alpha-end", type=float, default=math.degrees(traj.alpha_end), help="deg")
    p.add_argument("--rise", type=float, default=traj.rise_time, help="s")
    p.add_argument("--hold", type=float, default=traj.hold_time, help="s")
    p.add_argument("--cycles", type=int, default=traj.cycles)
    p.add_argument("--kp", type=float, default=ctl.kp, help="N*m/rad")
    p.add_argument("--kd", type=float, default=ctl.kd, help="N*m*s/rad")
    p.add_argument("--dt", type=float, default=ctl.dt, help="s")
    p.add_argument("--torque-limit", type=float, default=ctl.torque_limit, help="N*m")
    p.add_argument("--out", help="output directory (default $CADEL_SIM_OUT or ./cadel_out)")
    p.add_argument("--svg", action="store_true", help="also write an SVG plot")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cadel-sim", description="Kinematics, statics and exercise simulation for cable-driven elbow devices."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    preset = sub.add_parser("preset", help="list or dump device presets")
    preset_sub = preset.add_subparsers(dest="preset_command", required=True)
    plist = preset_sub.add_parser("list")
    plist.add_argument("--dump", metavar="DIR", help="write each preset as <DIR>/<name>.cfg")

    validate = sub.add_parser("validate", help="validate a device config file")
    validate.add_argument("config")

    ik = sub.add_parser("ik", help="cable lengths at a joint state")
    _device_args(ik)
    ik.add_argument("--alpha", type=float, required=True, help="deg")
    ik.add_argument("--beta", type=float, default=0.0, help="deg")

    sim = sub.add_parser("simulate", help="simulate one exercise")
    _device_args(sim)
    sim.add_argument("--load", type=_nonneg, required=True, help="payload kg")
    _load_args(sim)
    _exercise_args(sim)

    sweep = sub.add_parser("sweep-loads", help="simulate the exercise for each payload")
    _device_args(sweep)
    sweep.add_argument(
        "--loads", type=_mass_list, default=list(DEFAULT_LOADS), help="comma-separated kg"
    )
    _load_args(sweep)
    _exercise_args(sweep)

    ws = sub.add_parser("workspace", help="wrench-feasible workspace map")
    _device_args(ws)
    ws.add_argument("--payload", type=_nonneg, default=0.0, help="kg")
    _load_args(ws)
    ws.add_argument("--res-alpha", type=int, default=DEFAULT_RESOLUTION[0])
    ws.add_argument("--res-beta", type=int, default=DEFAULT_RESOLUTION[1])
    ws.add_argument("--out")

    tc = sub.add_parser("torque-curve", help="quasi-static right-side motor torque vs alpha")
    _device_args(tc)
    tc.add_argument("--loads", type=_mass_list, default=list(DEFAULT_LOADS), help="comma-separated kg")
    _load_args(tc)
    tc.add_argument("--alpha-min", type=float, default=0.0, help="deg")
    tc.add_argument("--alpha-max", type=float, default=60.0, help="deg")
    tc.add_argument("--step", type=float, default=1.0, help="deg")
    tc.add_argument("--out")
    tc.add_argument("--svg", action="store_true")
    return parser


def _base_load(args) -> LoadCase:
    try:
        return LoadCase(
            forearm_mass=args.forearm_mass,
            forearm_com_distance=args.forearm_com,
            payload_distance=args.payload_distance,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _exercise(args) -> tuple[TrajectorySpec, ControllerConfig]:
    try:
        traj = TrajectorySpec(
            alpha_start=math.radians(args.alpha_start),
            alpha_end=math.radians(args.alpha_end),
            rise_time=args.rise,
            hold_time=args.hold,
            cycles=args.cycles,
        )
        ctl = ControllerConfig(kp=args.kp, kd=args.kd, dt=args.dt, torque_limit=args.torque_limit)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return traj, ctl


def _cmd_preset(args) -> int:
    for v in Version:
        config = build_preset(v)
        print(f"{v.value}: {config.cable_count} cables, routing "
              + ", ".join(type(r).__name__ for r in config.routing))
    if args.dump:
        out = resolve_out_dir(args.dump)
        out.mkdir(parents=True, exist_ok=True)
        for v in Version:
            print(f"wrote {dump_config(build_preset(v), out / f'{v.value}.cfg')}")
    return 0


def _cmd_validate(args) -> int:
    config = load_config(args.config)
    print(f"ok: {config.name} ({config.cable_count} cables)")
    print(dumps_config(config), end="")
    return 0


def _cmd_ik(args) -> int:
    config = resolve_device(args.preset, args.config)
    joint = JointState(math.radians(args.alpha), math.radians(args.beta))
    lengths = inverse_kinematics(config, joint).lengths
    J = cable_jacobian(config, joint)
    print(f"device {config.name} at alpha={args.alpha:g} deg, beta={args.beta:g} deg")
    print("cable  length_m      dl/dalpha_m_per_rad  dl/dbeta_m_per_rad")
    for i, (ell, row) in enumerate(zip(lengths, J), start=1):
        print(f"{i:>5}  {ell:.9f}  {row[0]: .9f}         {row[1]: .9f}")
    return 0


def _cmd_simulate(args) -> int:
    config = resolve_device(args.preset, args.config)
    traj, ctl = _exercise(args)
    load = replace(_base_load(args), payload_mass=args.load)
    record = simulate_exercise(config, load, traj, ctl)
    out = resolve_out_dir(args.out)
    path = write_record_csv(record, out / record_filename(config.name, args.load))
    print(f"wrote {path}")
    if args.svg:
        svg = write_svg_plot(
            path.with_suffix(".svg"),
            [("desired", record.time, np.degrees(record.alpha_desired)),
             ("executed", record.time, np.degrees(record.alpha))],
            title=f"{config.name} {format_mass(args.load)} kg: elbow trajectory",
            xlabel="time [s]", ylabel="alpha [deg]",
        )
        print(f"wrote {svg}")
    print(summarize([record]).format())
    return 0


def _cmd_sweep(args) -> int:
    config = resolve_device(args.preset, args.config)
    traj, ctl = _exercise(args)
    spec = ExperimentSpec(
        device=config, loads=tuple(args.loads), trajectory=traj, controller=ctl,
        out_dir=resolve_out_dir(args.out), base_load=_base_load(args),
    )
    results = run_sweep(spec)
    for _, path in results:
        print(f"wrote {path}")
    records = [r for r, _ in results]
    if args.svg:
        labels = [f"{format_mass(r.payload_mass)} kg" for r in records]
        svg = write_svg_plot(
            spec.out_dir / f"{config.name}_torque_time.svg",
            [(lab, r.time, r.motor_torques[:, 0]) for lab, r in zip(labels, records)],
            title=f"{config.name}: right-side motor torque", xlabel="time [s]", ylabel="torque [N*m]",
        )
        svg2 = write_svg_plot(
            spec.out_dir / f"{config.name}_torque_angle.svg",
            [(lab, np.degrees(r.alpha), r.motor_torques[:, 0]) for lab, r in zip(labels, records)],
            title=f"{config.name}: right-side motor torque vs elbow angle",
            xlabel="alpha [deg]", ylabel="torque [N*m]",
        )
        print(f"wrote {svg}\nwrote {svg2}")
    print(summarize(records).format())
    return 0


def _cmd_workspace(args) -> int:
    config = resolve_device(args.preset, args.config)
    if args.res_alpha < 2 or args.res_beta < 2:
        raise ConfigError("--res-alpha/--res-beta must be >= 2")
    load = replace(_base_load(args), payload_mass=args.payload)
    grid = workspace_map(config, load, (args.res_alpha, args.res_beta))
    out = resolve_out_dir(args.out)
    path = write_workspace_csv(grid, out / f"{config.name}_workspace_{format_mass(args.payload)}kg.csv")
    print(f"wrote {path}")
    print(f"feasible fraction: {grid.feasible_fraction:.4f} ({int(grid.feasible.sum())}/{grid.feasible.size} cells)")
    return 0


def _cmd_torque_curve(args) -> int:
    config = resolve_device(args.preset, args.config)
    if args.step <= 0 or args.alpha_max <= args.alpha_min:
        raise ConfigError("need --step > 0 and --alpha-max > --alpha-min")
    alphas = exercise_alphas(args.step, args.alpha_min, args.alpha_max)
    curves = torque_vs_angle(config, args.loads, alphas, _base_load(args))
    out = resolve_out_dir(args.out)
    for mass, torque in curves.items():
        path = write_torque_curve_csv(alphas, torque, out / f"{config.name}_torque_{format_mass(mass)}kg.csv")
        c, resid = cos_fit(alphas, torque)
        gaps = int(np.isnan(torque).sum())
        print(f"wrote {path}  (c={c:.4f} N*m, cos-fit residual {resid:.2%}, gaps {gaps})")
    if args.svg:
        svg = write_svg_plot(
            out / f"{config.name}_torque_curves.svg",
            [(f"{format_mass(m)} kg", np.degrees(alphas), t) for m, t in curves.items()],
            title=f"{config.name}: quasi-static right-side motor torque",
            xlabel="alpha [deg]", ylabel="torque [N*m]",
        )
        print(f"wrote {svg}")
    return 0


COMMANDS = {
    "preset": _cmd_preset,
    "validate": _cmd_validate,
    "ik": _cmd_ik,
    "simulate": _cmd_simulate,
    "sweep-loads": _cmd_sweep,
    "workspace": _cmd_workspace,
    "torque-curve": _cmd_torque_curve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, InvalidGeometry) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CadelError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
