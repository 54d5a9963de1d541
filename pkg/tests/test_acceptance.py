"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

The lines are also collected and printed in the terminal summary.
"""

import csv
import math
import time

import numpy as np
import pytest

from cadel_sim.cli import main
from cadel_sim.errors import Infeasible
from cadel_sim.geometry import DEFAULT_ROM, JointState, Version, build_preset
from cadel_sim.harness import DEFAULT_LOADS, record_filename
from cadel_sim.kinematics import cable_jacobian, forward_kinematics, inverse_kinematics
from cadel_sim.simulation import ControllerConfig, TrajectorySpec, plant_step, simulate_exercise
from cadel_sim.statics import LoadCase, gravity_torque, solve_tensions, structure_rows, tension_distribution
from cadel_sim.workspace import cos_fit, exercise_alphas, torque_vs_angle, workspace_map

from conftest import ACCEPTANCE_LINES, rom_grid


def report(number, title, passed, detail):
    line = f"[{'PASS' if passed else 'FAIL'}] AC{number} {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert passed, line


def test_ac1_load_sweep_reproduces_torque_protocol(tmp_path, capsys):
    start = time.perf_counter()
    code = main(["sweep-loads", "--preset", "lcadel", "--out", str(tmp_path), "--svg"])
    alphas = exercise_alphas()
    curves = torque_vs_angle(build_preset(Version.LCADEL), list(DEFAULT_LOADS), alphas)
    elapsed = time.perf_counter() - start
    capsys.readouterr()

    peaks = []
    for mass in DEFAULT_LOADS:
        with open(tmp_path / record_filename("lcadel", mass), newline="") as fh:
            rows = list(csv.DictReader(fh))
        peaks.append(max(abs(float(r["tau1_Nm"])) for r in rows))
    residuals = [cos_fit(alphas, curves[m])[1] for m in DEFAULT_LOADS]
    increasing = all(b > a for a, b in zip(peaks, peaks[1:]))
    passed = code == 0 and increasing and max(residuals) < 0.05 and elapsed < 10.0
    detail = (
        f"peaks {', '.join(f'{p:.3f}' for p in peaks)} N*m, "
        f"max cos residual {100 * max(residuals):.2f}% (< 5%), {elapsed:.2f} s (< 10 s)"
    )
    report(1, "load sweep", passed, detail)


def test_ac2_power_order_of_magnitude():
    rec = simulate_exercise(build_preset(Version.LCADEL), LoadCase(payload_mass=0.5), TrajectorySpec())
    power = rec.average_power
    report(2, "power band", 0.6 <= power <= 6.0, f"average power {power:.3f} W in [0.6, 6.0] W")


def test_ac3_equitable_split():
    config = build_preset(Version.LCADEL)
    worst = 0.0
    for mass in (0.0, *DEFAULT_LOADS):
        load = LoadCase(payload_mass=mass)
        for alpha in np.radians(np.arange(-60.0, 60.5, 1.0)):
            sol = tension_distribution(config, JointState(alpha, 0.0), (gravity_torque(load, alpha), 0.0))
            worst = max(worst, abs(sol.tensions[0] - sol.tensions[1]))
    report(3, "equitable split", worst <= 1e-9, f"max |t1 - t2| = {worst:.2e} N (<= 1e-9)")


def _central_difference(config, alpha, beta, h=1e-7):
    def ik(a, b):
        return inverse_kinematics(config, JointState(a, b)).lengths

    return np.column_stack(
        [(ik(alpha + h, beta) - ik(alpha - h, beta)) / (2 * h), (ik(alpha, beta + h) - ik(alpha, beta - h)) / (2 * h)]
    )


def test_ac4_kinematic_oracles():
    lcadel = build_preset(Version.LCADEL)
    fk_err = 0.0
    jac_err = 0.0
    for alpha, beta in rom_grid(13, 11, DEFAULT_ROM):
        joint = forward_kinematics(lcadel, inverse_kinematics(lcadel, JointState(alpha, beta)), JointState(0.0, 0.0))
        fk_err = max(fk_err, abs(joint.alpha - alpha), abs(joint.beta - beta))
        for version in Version:
            config = build_preset(version)
            J = cable_jacobian(config, JointState(alpha, beta))
            jac_err = max(jac_err, float(np.max(np.abs(J - _central_difference(config, alpha, beta)))))
    passed = fk_err <= 1e-6 and jac_err <= 1e-5
    report(4, "kinematic oracles", passed, f"FK o IK error {fk_err:.2e} rad (<= 1e-6), Jacobian error {jac_err:.2e} m/rad (<= 1e-5)")


def test_ac5_statics_oracles():
    rng = np.random.default_rng(5)
    wrench_err, solved = 0.0, 0
    for version in Version:
        config = build_preset(version)
        for alpha, beta in rom_grid():
            joint = JointState(alpha, beta)
            demands = [(gravity_torque(LoadCase(payload_mass=m), alpha), 0.0) for m in (0.0, *DEFAULT_LOADS)]
            demands += [(rng.uniform(-1.0, 8.0), rng.uniform(-0.5, 0.5)) for _ in range(3)]
            for demand in demands:
                try:
                    sol = tension_distribution(config, joint, demand)
                except Infeasible:
                    continue
                solved += 1
                wrench_err = max(wrench_err, float(np.max(np.abs(sol.structure @ sol.tensions - demand))))

    kkt_err = 0.0
    lcadel = build_preset(Version.LCADEL)
    for alpha, beta in rom_grid():
        A = structure_rows(lcadel, JointState(alpha, beta))
        for flexion, lateral in ((2.0, 0.0), (4.0, 0.05), (3.0, -0.05)):
            demand = np.array([flexion, lateral])
            exact = np.linalg.solve(A, demand)
            if np.all(exact >= 1.0) and np.all(exact <= 60.0):
                kkt_err = max(kkt_err, float(np.max(np.abs(solve_tensions(A, demand, 1.0, 60.0) - exact))))

    vw_err = 0.0
    h = 1e-6
    for version in Version:
        config = build_preset(version)
        for alpha, beta in rom_grid():
            A = structure_rows(config, JointState(alpha, beta))
            dl = (
                inverse_kinematics(config, JointState(alpha + h, beta)).lengths
                - inverse_kinematics(config, JointState(alpha - h, beta)).lengths
            ) / (2 * h)
            vw_err = max(vw_err, float(np.max(np.abs(A[0] + dl))))

    passed = solved > 0 and wrench_err <= 1e-9 and kkt_err <= 1e-9 and vw_err <= 1e-6
    detail = (
        f"{solved} solves, max wrench residual {wrench_err:.1e} N*m (<= 1e-9), "
        f"KKT error {kkt_err:.1e} N (<= 1e-9), virtual-work error {vw_err:.1e} (<= 1e-6)"
    )
    report(5, "statics oracles", passed, detail)


def test_ac6_tracking_and_step_size():
    config = build_preset(Version.LCADEL)
    worst_rms = 0.0
    for mass in DEFAULT_LOADS:
        rec = simulate_exercise(config, LoadCase(payload_mass=mass), TrajectorySpec(), ControllerConfig(dt=0.006))
        worst_rms = max(worst_rms, math.degrees(rec.rms_tracking_error))
    load = LoadCase(payload_mass=0.5)
    coarse = simulate_exercise(config, load, TrajectorySpec(), ControllerConfig(dt=0.006))
    fine = simulate_exercise(config, load, TrajectorySpec(), ControllerConfig(dt=0.003))
    drift = abs(coarse.alpha[-1] - fine.alpha[-1])
    passed = worst_rms < 1.0 and drift < 1e-4
    report(6, "tracking", passed, f"max RMS error {worst_rms:.3f} deg (< 1), final alpha shift at dt/2 {drift:.1e} rad (< 1e-4)")


def test_ac7_pendulum_period():
    load = LoadCase(payload_mass=0.5)
    expected = 2 * math.pi * math.sqrt(load.inertia / (load.static_moment * load.gravity))
    dt = 1e-4
    amplitude = math.radians(1.0)
    state = JointState(-math.pi / 2 + amplitude, 0.0)
    crossings, t, prev = [], 0.0, amplitude
    while len(crossings) < 6:
        state = plant_step(state, 0.0, load, dt, damping=0.0)
        t += dt
        eps = state.alpha + math.pi / 2
        if prev > 0 >= eps:
            crossings.append(t - dt * eps / (eps - prev))
        prev = eps
    period = float(np.mean(np.diff(crossings)))
    err = abs(period - expected) / expected
    report(7, "pendulum period", err < 0.02, f"{period:.5f} s vs analytic {expected:.5f} s, error {100 * err:.3f}% (< 2%)")


def test_ac8_zero_load_workspace():
    config = build_preset(Version.LCADEL)
    load = LoadCase(payload_mass=0.0)
    grid = workspace_map(config, load)
    mismatches = 0
    for i, a in enumerate(grid.alpha):
        for j, b in enumerate(grid.beta):
            try:
                tension_distribution(config, JointState(float(a), float(b)), (gravity_torque(load, float(a)), 0.0))
                ok = True
            except Infeasible:
                ok = False
            mismatches += ok != bool(grid.feasible[i, j])
    fraction = grid.feasible_fraction
    passed = fraction == 1.0 and mismatches == 0
    shape = "x".join(str(s) for s in grid.feasible.shape)
    report(8, "zero-load workspace", passed, f"{100 * fraction:.1f}% feasible on {shape} grid, {mismatches} cell mismatches")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
