import math

import numpy as np
import pytest

from cadel_sim.errors import Infeasible
from cadel_sim.geometry import DEFAULT_ROM, JointState, Version, build_preset
from cadel_sim.statics import LoadCase, gravity_torque, tension_distribution, wrench_feasible
from cadel_sim.workspace import (
    DEFAULT_RESOLUTION,
    cos_fit,
    exercise_alphas,
    grid_axis,
    torque_vs_angle,
    workspace_map,
)

LOADS = [0.5, 1.0, 1.5, 2.5]


def test_grid_axis_hits_both_ends_exactly():
    axis = grid_axis(DEFAULT_ROM.alpha_min, DEFAULT_ROM.alpha_max, 61)
    assert axis[0] == DEFAULT_ROM.alpha_min
    assert axis[-1] == pytest.approx(DEFAULT_ROM.alpha_max, abs=1e-15)
    np.testing.assert_allclose(np.diff(np.degrees(axis)), 2.0)
    with pytest.raises(ValueError):
        grid_axis(0.0, 1.0, 1)


def test_default_resolution_is_two_degree_steps():
    grid = workspace_map(build_preset(Version.LCADEL), LoadCase(), (3, 3))
    assert grid.feasible.shape == (3, 3)
    assert DEFAULT_RESOLUTION == (61, 51)


def test_zero_payload_lcadel_is_fully_feasible(lcadel):
    grid = workspace_map(lcadel, LoadCase(payload_mass=0.0), (25, 21))
    assert grid.feasible.all()
    assert np.all(np.isfinite(grid.total_tension))


@pytest.mark.parametrize("version", list(Version))
def test_map_matches_cellwise_oracle(version):
    config = build_preset(version)
    load = LoadCase(payload_mass=1.0)
    grid = workspace_map(config, load, (13, 11))
    for i, a in enumerate(grid.alpha):
        for j, b in enumerate(grid.beta):
            joint = JointState(float(a), float(b))
            assert grid.feasible[i, j] == wrench_feasible(config, joint, load)
            if grid.feasible[i, j]:
                sol = tension_distribution(config, joint, (gravity_torque(load, float(a)), 0.0))
                assert grid.total_tension[i, j] == pytest.approx(sol.tensions.sum())
            else:
                assert math.isnan(grid.total_tension[i, j])


def test_heavy_payload_has_infeasible_cells(lcadel):
    grid = workspace_map(lcadel, LoadCase(payload_mass=8.0), (13, 11))
    assert 0.0 < grid.feasible_fraction < 1.0
    # gravity demand peaks at alpha = 0, so infeasibility appears there first
    assert not grid.feasible[6].all()


def test_refinement_keeps_shared_nodes(lcadel):
    load = LoadCase(payload_mass=8.0)
    coarse = workspace_map(lcadel, load, (7, 6))
    fine = workspace_map(lcadel, load, (13, 11))
    np.testing.assert_allclose(fine.alpha[::2], coarse.alpha, atol=1e-15)
    np.testing.assert_allclose(fine.beta[::2], coarse.beta, atol=1e-15)
    np.testing.assert_array_equal(fine.feasible[::2, ::2], coarse.feasible)


def test_map_is_symmetric_in_beta(lcadel):
    grid = workspace_map(lcadel, LoadCase(payload_mass=8.0), (13, 11))
    np.testing.assert_array_equal(grid.feasible, grid.feasible[:, ::-1])
    ok = grid.feasible
    np.testing.assert_allclose(grid.total_tension[ok], grid.total_tension[:, ::-1][ok], rtol=1e-9)


def test_torque_curves_rise_with_payload(lcadel):
    alphas = exercise_alphas()
    curves = torque_vs_angle(lcadel, LOADS, alphas)
    stacked = np.vstack([curves[m] for m in LOADS])
    assert np.all(np.isfinite(stacked))
    assert np.all(np.diff(stacked, axis=0) > 0)
    for m in LOADS:
        assert int(np.argmax(curves[m])) == 0


def test_torque_curves_follow_cosine(lcadel):
    alphas = exercise_alphas()
    for torque in torque_vs_angle(lcadel, LOADS, alphas).values():
        c, resid = cos_fit(alphas, torque)
        assert c > 0
        assert resid < 0.05


def test_cos_fit_exact_on_a_cosine():
    alphas = np.radians(np.arange(0, 61))
    c, resid = cos_fit(alphas, 0.3 * np.cos(alphas))
    assert c == pytest.approx(0.3)
    assert resid == pytest.approx(0.0, abs=1e-12)


def test_infeasible_samples_are_gaps(lcadel):
    curves = torque_vs_angle(lcadel, [99.0], exercise_alphas(10.0))
    assert np.isnan(curves[99.0]).any()
    with pytest.raises(Infeasible):
        tension_distribution(lcadel, JointState(0.0, 0.0), (gravity_torque(LoadCase(payload_mass=99.0), 0.0), 0.0))


def test_empty_load_list_rejected(lcadel):
    with pytest.raises(ValueError):
        torque_vs_angle(lcadel, [], exercise_alphas())


def test_exercise_alphas():
    a = exercise_alphas()
    assert a.size == 61
    assert a[0] == 0.0 and a[-1] == pytest.approx(math.radians(60))
