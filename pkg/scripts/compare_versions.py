"""Power, torque and tracking of the three device presets on the same exercise."""

import argparse
import math

import numpy as np

from cadel_sim.geometry import REFERENCE_POWER_W, Version, build_preset
from cadel_sim.simulation import TrajectorySpec, simulate_exercise
from cadel_sim.statics import LoadCase


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--loads", default="0.5,1.0,1.5,2.5")
    parser.add_argument("--cycles", type=int, default=1)
    args = parser.parse_args()
    loads = [float(s) for s in args.loads.split(",")]
    traj = TrajectorySpec(cycles=args.cycles)

    print(f"{'device':>8} {'cables':>6} {'mean_P_W':>9} {'ref_P_W':>8} {'peak_tau_Nm':>12} {'max_rms_deg':>12}")
    for version in Version:
        config = build_preset(version)
        records = [simulate_exercise(config, LoadCase(payload_mass=m), traj) for m in loads]
        mean_p = float(np.mean([r.average_power for r in records]))
        peak = max(r.peak_motor_torque for r in records)
        rms = max(math.degrees(r.rms_tracking_error) for r in records)
        print(
            f"{version.value:>8} {config.cable_count:>6} {mean_p:>9.3f} "
            f"{REFERENCE_POWER_W[version]:>8.2f} {peak:>12.4f} {rms:>12.3f}"
        )


if __name__ == "__main__":
    main()
