"""Gravity statics and cable tension distribution."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import lsq_linear

from .errors import Infeasible
from .geometry import FLEXION_AXIS, DeviceConfig, JointState, forearm_frame
from .kinematics import CableGeometry, cable_geometry

WRENCH_TOL = 1e-9
BOX_TOL = 1e-9


@dataclass(frozen=True)
class LoadCase:
    forearm_mass: float = 1.0
    payload_mass: float = 0.0
    forearm_com_distance: float = 0.11
    payload_distance: float = 0.25
    forearm_length: float = 0.25
    gravity: float = 9.81

    def __post_init__(self):
        if self.forearm_mass < 0 or self.payload_mass < 0:
            raise ValueError("masses must be >= 0")
        if min(self.forearm_com_distance, self.payload_distance, self.forearm_length) <= 0:
            raise ValueError("distances must be > 0")
        if self.gravity <= 0:
            raise ValueError("gravity must be > 0")

    @property
    def static_moment(self) -> float:
        """Sum of mass * lever about the elbow, kg*m."""
        return (
            self.forearm_mass * self.forearm_com_distance
            + self.payload_mass * self.payload_distance
        )

    @property
    def inertia(self) -> float:
        """Forearm as a uniform rod plus a point payload, kg*m^2."""
        return (
            self.forearm_mass * self.forearm_length**2 / 3.0
            + self.payload_mass * self.payload_distance**2
        )


@dataclass(frozen=True)
class CableSolution:
    tensions: np.ndarray
    motor_torques: np.ndarray
    residual_wrench: np.ndarray
    structure: np.ndarray


def gravity_torque(load: LoadCase, alpha: float) -> float:
    """Flexion torque the cables must supply to hold the forearm still."""
    return load.static_moment * load.gravity * math.cos(alpha)


def structure_rows(
    config: DeviceConfig, joint: JointState, geo: CableGeometry | None = None
) -> np.ndarray:
    """2 x n map from cable tensions to (flexion torque, lateral moment).

    Moments are taken about the elbow centre for the force each cable
    applies at its forearm anchor; the lateral row is about the forearm's
    anterior normal (rotation out of the sagittal plane).
    """
    if geo is None:
        geo = cable_geometry(config, joint)
    _, normal = forearm_frame(joint.alpha)
    p, u = geo.forearm_points, geo.directions
    moments = np.column_stack(
        [
            p[:, 1] * u[:, 2] - p[:, 2] * u[:, 1],
            p[:, 2] * u[:, 0] - p[:, 0] * u[:, 2],
            p[:, 0] * u[:, 1] - p[:, 1] * u[:, 0],
        ]
    )
    return np.vstack([moments @ FLEXION_AXIS, moments @ normal])


def _min_norm(A: np.ndarray, b: np.ndarray, atol: float) -> np.ndarray:
    """Minimum-norm least-squares solution, singular values <= atol dropped."""
    if A.shape[1] == 0:
        return np.zeros(0)
    u, s, vh = np.linalg.svd(A, full_matrices=False)
    keep = s > atol
    return vh[keep].T @ ((u[:, keep].T @ b) / s[keep])


def _null_space(A: np.ndarray, atol: float) -> np.ndarray:
    # Absolute cutoff: a column that is negligible against the whole
    # structure matrix must count as null even when it is alone.
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    return vh[int(np.sum(s > atol)):].T


def _box_residual(A, demand, lo, hi) -> float:
    """Smallest achievable ||A t - demand||_inf over the box (reported on failure)."""
    if np.all(hi - lo <= 0):
        return float(np.max(np.abs(A @ lo - demand)))
    sol = lsq_linear(A, demand, bounds=(lo, np.maximum(hi, lo + 1e-15)), method="bvls", tol=1e-15)
    return float(np.max(np.abs(A @ sol.x - demand)))


def solve_tensions(
    A: np.ndarray,
    demand: np.ndarray,
    t_min: float,
    t_max: float,
    *,
    tol: float = WRENCH_TOL,
) -> np.ndarray:
    """min sum (t - t_min)^2  s.t.  A t = demand,  t_min <= t <= t_max.

    Primal active-set method over the box constraints, started from a
    bounded least-squares feasible point.  Raises Infeasible when no box
    point reproduces ``demand`` to ``tol``.
    """
    A = np.asarray(A, dtype=float)
    demand = np.asarray(demand, dtype=float)
    m, n = A.shape
    lo = np.full(n, float(t_min))
    hi = np.full(n, float(t_max))
    t0 = lo.copy()
    atol = 1e-12 * max(1.0, float(np.linalg.norm(A, 2)))

    # Cheap path: the equality-constrained optimum already sits in the box.
    t = t0 + _min_norm(A, demand - A @ t0, atol)
    if (
        np.max(np.abs(A @ t - demand)) <= tol
        and np.all(t >= lo - BOX_TOL)
        and np.all(t <= hi + BOX_TOL)
    ):
        return np.clip(t, lo, hi)

    if np.any(hi - lo <= 0):
        t = lo.copy()
        residual = float(np.max(np.abs(A @ t - demand)))
        if residual > tol:
            raise Infeasible(residual)
        return t

    start = lsq_linear(A, demand, bounds=(lo, hi), method="bvls", tol=1e-15)
    t = np.clip(start.x, lo, hi)
    if np.max(np.abs(A @ t - demand)) > max(tol, 1e-12):
        raise Infeasible(_box_residual(A, demand, lo, hi))

    # working set: index -> -1 (at lower bound) / +1 (at upper bound)
    snap = 1e-12 * max(1.0, t_max)
    working = {}
    for j in range(n):
        if t[j] - lo[j] <= snap:
            working[j], t[j] = -1, lo[j]
        elif hi[j] - t[j] <= snap:
            working[j], t[j] = +1, hi[j]

    max_iter = 4 * 2**n + 8
    for _ in range(max_iter):
        free = np.array([j for j in range(n) if j not in working], dtype=int)
        g = t - t0
        p = np.zeros(n)
        if free.size:
            Z = _null_space(A[:, free], atol)
            if Z.size:
                p[free] = -Z @ (Z.T @ g[free])
        if np.max(np.abs(p)) <= 1e-13 * max(1.0, t_max):
            if not working:
                break
            lam = _min_norm(A[:, free].T, g[free], atol) if free.size else np.zeros(m)
            r = g - A.T @ lam
            mu = {j: -side * r[j] for j, side in working.items()}
            j_worst = min(mu, key=mu.get)
            if mu[j_worst] >= -1e-12:
                break
            del working[j_worst]
            continue
        step = 1.0
        blocking = None
        for j in free:
            if p[j] < 0:
                s = (lo[j] - t[j]) / p[j]
                side = -1
            elif p[j] > 0:
                s = (hi[j] - t[j]) / p[j]
                side = +1
            else:
                continue
            if s < step:
                step, blocking = s, (j, side)
        t = t + step * p
        if blocking is not None:
            j, side = blocking
            working[j] = side
            t[j] = lo[j] if side < 0 else hi[j]
    else:
        raise RuntimeError("active-set iteration did not terminate")

    # Re-solve the free block exactly for the final working set.
    free = np.array([j for j in range(n) if j not in working], dtype=int)
    fixed = np.array(sorted(working), dtype=int)
    t_fixed = np.array([lo[j] if working[j] < 0 else hi[j] for j in fixed])
    rhs = demand - (A[:, fixed] @ t_fixed if fixed.size else 0.0)
    polished = t.copy()
    if fixed.size:
        polished[fixed] = t_fixed
    if free.size:
        polished[free] = t0[free] + _min_norm(A[:, free], rhs - A[:, free] @ t0[free], atol)
    if (
        np.max(np.abs(A @ polished - demand)) <= np.max(np.abs(A @ t - demand))
        and np.all(polished >= lo - BOX_TOL)
        and np.all(polished <= hi + BOX_TOL)
    ):
        t = polished
    residual = float(np.max(np.abs(A @ t - demand)))
    if residual > tol:
        raise Infeasible(residual)
    return np.clip(t, lo, hi)


def tension_distribution(
    config: DeviceConfig,
    joint: JointState,
    demand: tuple[float, float] | np.ndarray,
    geo: CableGeometry | None = None,
) -> CableSolution:
    demand = np.asarray(demand, dtype=float)
    if demand.shape != (2,) or not np.all(np.isfinite(demand)):
        raise ValueError("demand must be a finite (flexion, lateral) pair")
    A = structure_rows(config, joint, geo)
    limits = config.tension_limits
    t = solve_tensions(A, demand, limits.t_min, limits.t_max)
    motor = config.motor
    return CableSolution(
        tensions=t,
        motor_torques=t * motor.pulley_radius / motor.efficiency,
        residual_wrench=demand - A @ t,
        structure=A,
    )


def wrench_feasible(config: DeviceConfig, joint: JointState, load: LoadCase) -> bool:
    try:
        tension_distribution(config, joint, (gravity_torque(load, joint.alpha), 0.0))
    except Infeasible:
        return False
    return True
