"""Wrench-feasible fraction of the range of motion versus payload, per preset."""

import argparse
from pathlib import Path

from cadel_sim.geometry import Version, build_preset
from cadel_sim.harness import format_mass, write_workspace_csv
from cadel_sim.statics import LoadCase
from cadel_sim.workspace import workspace_map


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--payloads", default="0,2.5,5,10,15")
    parser.add_argument("--res", type=int, nargs=2, default=(31, 26), metavar=("N_ALPHA", "N_BETA"))
    parser.add_argument("--out", default="results/workspace")
    args = parser.parse_args()
    payloads = [float(s) for s in args.payloads.split(",")]
    out = Path(args.out)

    print(f"{'device':>8} " + " ".join(f"{p:>7g}kg" for p in payloads))
    for version in Version:
        config = build_preset(version)
        cells = []
        for p in payloads:
            grid = workspace_map(config, LoadCase(payload_mass=p), tuple(args.res))
            write_workspace_csv(grid, out / f"{config.name}_{format_mass(p)}kg.csv")
            cells.append(f"{100 * grid.feasible_fraction:>8.1f}%")
        print(f"{version.value:>8} " + " ".join(cells))


if __name__ == "__main__":
    main()
