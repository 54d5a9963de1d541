"""Right-side motor torque under increasing payload, dynamic and quasi-static.

Writes one CSV per payload plus torque-vs-time and torque-vs-angle SVGs,
then prints peak torques and the cos(alpha) fit of each static curve.
"""

import argparse
from pathlib import Path

import numpy as np

from cadel_sim.geometry import build_preset
from cadel_sim.harness import DEFAULT_LOADS, ExperimentSpec, run_sweep, summarize, write_svg_plot
from cadel_sim.statics import LoadCase
from cadel_sim.workspace import cos_fit, exercise_alphas, torque_vs_angle


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--preset", default="lcadel")
    parser.add_argument("--out", default="results/load_sweep")
    args = parser.parse_args()

    config = build_preset(args.preset)
    out = Path(args.out)
    results = run_sweep(ExperimentSpec(device=config, out_dir=out))
    print(summarize([r for r, _ in results]).format())

    write_svg_plot(
        out / "torque_time.svg",
        [(f"{r.payload_mass:g} kg", r.time, r.motor_torques[:, 0]) for r, _ in results],
        title=f"{config.name}: right-side motor torque", xlabel="time [s]", ylabel="torque [N*m]",
    )

    alphas = exercise_alphas()
    curves = torque_vs_angle(config, list(DEFAULT_LOADS), alphas, LoadCase())
    print(f"\n{'load_kg':>8} {'c_Nm':>8} {'cos_resid_%':>12}")
    for mass, torque in curves.items():
        c, resid = cos_fit(alphas, torque)
        print(f"{mass:>8.2f} {c:>8.4f} {100 * resid:>12.2f}")
    write_svg_plot(
        out / "torque_angle.svg",
        [(f"{m:g} kg", np.degrees(alphas), t) for m, t in curves.items()],
        title=f"{config.name}: quasi-static right-side torque", xlabel="alpha [deg]", ylabel="torque [N*m]",
    )

    full = np.radians(np.arange(-60.0, 60.5, 1.0))
    _, resid = cos_fit(full, torque_vs_angle(config, [1.0], full)[1.0])
    print(f"\ncos residual over the full +-60 deg range (1 kg): {100 * resid:.1f}%")
    print(f"outputs in {out.resolve()}")


if __name__ == "__main__":
    main()
