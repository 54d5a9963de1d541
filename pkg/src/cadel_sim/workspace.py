"""Wrench-feasible workspace maps and quasi-static torque curves."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateGeometry, Infeasible
from .geometry import DEFAULT_ROM, DeviceConfig, JointState, RangeOfMotion
from .statics import LoadCase, gravity_torque, tension_distribution

DEFAULT_RESOLUTION = (61, 51)  # 2 deg steps over +-60 deg, 2 deg over +-50 deg


@dataclass
class WorkspaceGrid:
    alpha: np.ndarray  # (na,)
    beta: np.ndarray  # (nb,)
    feasible: np.ndarray  # (na, nb) bool
    total_tension: np.ndarray  # (na, nb), NaN where infeasible

    @property
    def feasible_fraction(self) -> float:
        return float(np.mean(self.feasible))


def grid_axis(lo: float, hi: float, count: int) -> np.ndarray:
    if count < 2:
        raise ValueError("resolution must be >= 2 samples per axis")
    return lo + (np.arange(count) * (hi - lo)) / (count - 1)


def _cell(config: DeviceConfig, load: LoadCase, alpha: float, beta: float) -> float | None:
    try:
        sol = tension_distribution(config, JointState(alpha, beta), (gravity_torque(load, alpha), 0.0))
    except (Infeasible, DegenerateGeometry):
        return None
    return float(np.sum(sol.tensions))


def workspace_map(
    config: DeviceConfig,
    load: LoadCase,
    resolution: int | tuple[int, int] = DEFAULT_RESOLUTION,
    rom: RangeOfMotion = DEFAULT_ROM,
) -> WorkspaceGrid:
    na, nb = (resolution, resolution) if isinstance(resolution, int) else resolution
    alphas = grid_axis(rom.alpha_min, rom.alpha_max, na)
    betas = grid_axis(rom.beta_min, rom.beta_max, nb)
    feasible = np.zeros((na, nb), dtype=bool)
    total = np.full((na, nb), np.nan)
    for i, a in enumerate(alphas):
        for j, b in enumerate(betas):
            s = _cell(config, load, float(a), float(b))
            if s is not None:
                feasible[i, j] = True
                total[i, j] = s
    return WorkspaceGrid(alphas, betas, feasible, total)


def torque_vs_angle(
    config: DeviceConfig,
    loads: list[float],
    alphas: np.ndarray,
    base_load: LoadCase = LoadCase(),
    beta: float = 0.0,
) -> dict[float, np.ndarray]:
    """Quasi-static right-side (index 0) motor torque per payload mass.

    Infeasible samples are NaN gaps.
    """
    if not loads:
        raise ValueError("loads must be nonempty")
    curves = {}
    for mass in loads:
        load = replace(base_load, payload_mass=float(mass))
        torque = np.full(len(alphas), np.nan)
        for k, a in enumerate(alphas):
            try:
                sol = tension_distribution(
                    config, JointState(float(a), beta), (gravity_torque(load, float(a)), 0.0)
                )
            except (Infeasible, DegenerateGeometry):
                continue
            torque[k] = sol.motor_torques[0]
        curves[float(mass)] = torque
    return curves


def cos_fit(alpha: np.ndarray, torque: np.ndarray) -> tuple[float, float]:
    """Least-squares fit torque ~ c*cos(alpha); returns (c, relative residual).

    Relative residual is ||torque - c cos alpha|| / ||torque|| over the
    finite samples.
    """
    alpha = np.asarray(alpha, dtype=float)
    torque = np.asarray(torque, dtype=float)
    ok = np.isfinite(torque)
    basis = np.cos(alpha[ok])
    y = torque[ok]
    c = float(basis @ y / (basis @ basis))
    norm = float(np.linalg.norm(y))
    if norm == 0.0:
        return c, 0.0
    return c, float(np.linalg.norm(y - c * basis) / norm)


def exercise_alphas(step_deg: float = 1.0, lo_deg: float = 0.0, hi_deg: float = 60.0) -> np.ndarray:
    count = int(round((hi_deg - lo_deg) / step_deg)) + 1
    return np.radians(grid_axis(lo_deg, hi_deg, count))

