"""Cable inverse/forward kinematics and the cable-length Jacobian."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometry, NoConvergence
from .geometry import (
    LATERAL_AXIS,
    DeviceConfig,
    ElbowGuide,
    ForearmFollowing,
    JointState,
    RangeOfMotion,
    arm_anchor,
    forearm_anchor,
    forearm_anchor_angle,
    forearm_frame,
)

MIN_CABLE_LENGTH = 1e-6
FK_TOL = 1e-9
FK_MAX_ITER = 100
FK_COND_LIMIT = 1e12
FK_DAMPING = 1e-9


@dataclass(frozen=True)
class CableLengths:
    lengths: np.ndarray
    # Unit vector at each forearm anchor, pointing along the last cable
    # segment towards the arm anchor (or the elbow guide).
    directions: np.ndarray


@dataclass(frozen=True)
class CableGeometry:
    """Everything statics needs at one state, computed in a single pass."""

    lengths: np.ndarray
    directions: np.ndarray
    forearm_points: np.ndarray


def cable_geometry(config: DeviceConfig, joint: JointState) -> CableGeometry:
    n = config.cable_count
    lengths = np.empty(n)
    directions = np.empty((n, 3))
    points = np.empty((n, 3))
    for i in range(n):
        a = arm_anchor(config, i)
        p = forearm_anchor(config, i, joint.alpha, joint.beta)
        routing = config.routing[i]
        if isinstance(routing, ElbowGuide):
            g = routing.guide_point()
            last = g - p
            length = float(np.linalg.norm(a - g) + np.linalg.norm(last))
        else:
            last = a - p
            length = float(np.linalg.norm(last))
        seg = float(np.linalg.norm(last))
        if length < MIN_CABLE_LENGTH or seg < MIN_CABLE_LENGTH:
            raise DegenerateGeometry(
                f"cable {i} length {length:.3e} m below {MIN_CABLE_LENGTH} m (anchors coincide)"
            )
        lengths[i] = length
        directions[i] = last / seg
        points[i] = p
    return CableGeometry(lengths, directions, points)


def inverse_kinematics(config: DeviceConfig, joint: JointState) -> CableLengths:
    geo = cable_geometry(config, joint)
    return CableLengths(geo.lengths, geo.directions)


def _forearm_point_rates(config: DeviceConfig, i: int, joint: JointState) -> tuple[np.ndarray, np.ndarray]:
    """d(forearm anchor)/d(alpha) and d(forearm anchor)/d(beta)."""
    p = forearm_anchor(config, i, joint.alpha, joint.beta)
    # FLEXION_AXIS x p, with FLEXION_AXIS = -y
    dp_dalpha = np.array([-p[2], 0.0, p[0]])
    if isinstance(config.routing[i], ForearmFollowing):
        _, normal = forearm_frame(joint.alpha)
        phi = forearm_anchor_angle(config, i, joint.beta)
        dp_dbeta = config.forearm_ring.radius * (-math.sin(phi) * normal + math.cos(phi) * LATERAL_AXIS)
    else:
        dp_dbeta = np.zeros(3)
    return dp_dalpha, dp_dbeta


def cable_jacobian(
    config: DeviceConfig, joint: JointState, geo: CableGeometry | None = None
) -> np.ndarray:
    """J[i] = (dl_i/dalpha, dl_i/dbeta), metres per radian.

    Only the forearm anchor moves, so dl = -u . dp with u the unit vector
    of the last segment pointing away from the forearm anchor.
    """
    if geo is None:
        geo = cable_geometry(config, joint)
    J = np.empty((config.cable_count, 2))
    for i in range(config.cable_count):
        dpa, dpb = _forearm_point_rates(config, i, joint)
        u = geo.directions[i]
        J[i, 0] = -u @ dpa
        J[i, 1] = -u @ dpb
    return J


def forward_kinematics(
    config: DeviceConfig,
    lengths: CableLengths | np.ndarray,
    guess: JointState,
    *,
    tol: float = FK_TOL,
    max_iter: int = FK_MAX_ITER,
) -> JointState:
    """Gauss-Newton on IK(alpha, beta) - lengths, started from ``guess``.

    A tiny diagonal damping is added when the normal matrix is nearly
    singular (e.g. beta is unobservable for routings that ignore it); the
    unobservable coordinate then stays at the guess.
    """
    target = np.asarray(getattr(lengths, "lengths", lengths), dtype=float)
    if target.shape != (config.cable_count,):
        raise ValueError(f"expected {config.cable_count} lengths, got shape {target.shape}")
    q = np.array([guess.alpha, guess.beta], dtype=float)
    residual = math.inf
    for it in range(max_iter + 1):
        joint = JointState(q[0], q[1])
        r = cable_geometry(config, joint).lengths - target
        residual = float(np.max(np.abs(r)))
        if residual < tol:
            return JointState(float(q[0]), float(q[1]), guess.alpha_dot, guess.beta_dot)
        if it == max_iter:
            break
        J = cable_jacobian(config, joint)
        N = J.T @ J
        if np.linalg.cond(N) > FK_COND_LIMIT:
            N = N + FK_DAMPING * np.eye(2)
        step = np.linalg.solve(N, -J.T @ r)
        if not np.all(np.isfinite(step)):
            break
        # Keep each update local; FK returns the branch nearest the guess.
        scale = max(1.0, float(np.max(np.abs(step))) / 0.5)
        q = q + step / scale
    raise NoConvergence(max_iter, residual)


def check_rom(joint: JointState, rom: RangeOfMotion) -> list[str]:
    """Return the violated axes (closed intervals); an empty list means inside."""
    out = []
    if not rom.alpha_min <= joint.alpha <= rom.alpha_max:
        out.append(
            f"alpha {math.degrees(joint.alpha):.3f} deg outside "
            f"[{math.degrees(rom.alpha_min):.3f}, {math.degrees(rom.alpha_max):.3f}]"
        )
    if not rom.beta_min <= joint.beta <= rom.beta_max:
        out.append(
            f"beta {math.degrees(joint.beta):.3f} deg outside "
            f"[{math.degrees(rom.beta_min):.3f}, {math.degrees(rom.beta_max):.3f}]"
        )
    return out
