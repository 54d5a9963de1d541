"""Scan ring dimensions for a 2-cable device and report flexion lever and cos-fit.

Shows why the defaults use lateral (90 deg) anchors: with anchors near the
anterior midline (try --anchor-deg 20) the cables cross the elbow axis
inside the exercise range, the lever arm changes sign and the exercise
becomes infeasible.
"""

import argparse
import itertools
import math

import numpy as np

from cadel_sim.errors import DegenerateGeometry, Infeasible
from cadel_sim.geometry import DeviceConfig, ForearmFollowing, JointState, Ring
from cadel_sim.statics import structure_rows
from cadel_sim.workspace import cos_fit, exercise_alphas, torque_vs_angle


def lever_range(config, alphas):
    levers = [structure_rows(config, JointState(float(a), 0.0))[0, 0] for a in alphas]
    return min(levers), max(levers)


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--anchor-deg", type=float, default=90.0)
    args = parser.parse_args()
    th = math.radians(args.anchor_deg)
    alphas = exercise_alphas(2.0)

    print(f"{'arm_off':>7} {'fore_r':>6} {'fore_off':>8} {'min_lever':>9} {'max_lever':>9} {'cos_resid_%':>11}")
    for arm_off, fore_r, fore_off in itertools.product((0.10, 0.12), (0.03, 0.04), (0.12, 0.17, 0.22)):
        config = DeviceConfig(
            "scan", 2, Ring(0.05, arm_off, (th, -th)), Ring(fore_r, fore_off, (th, -th)),
            (ForearmFollowing(), ForearmFollowing()),
        )
        try:
            lo, hi = lever_range(config, alphas)
            torque = torque_vs_angle(config, [1.0], alphas)[1.0]
        except (DegenerateGeometry, Infeasible):
            continue
        fit = f"{100 * cos_fit(alphas, torque)[1]:>11.2f}" if np.isfinite(torque).all() else f"{'infeasible':>11}"
        print(f"{arm_off:>7.2f} {fore_r:>6.2f} {fore_off:>8.2f} {lo:>9.4f} {hi:>9.4f} {fit}")


if __name__ == "__main__":
    main()
