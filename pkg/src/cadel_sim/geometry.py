"""Device geometry: ring platforms, cable anchors, routing and presets.

World frame is fixed to the arm ring: x anterior, y lateral, z along the
upper arm (proximal positive), elbow centre at the origin.  At alpha = 0 the
forearm points along +x (horizontal forearm, vertical upper arm); flexion
rotates it towards +z.  Angles are radians everywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidGeometry

LATERAL_AXIS = np.array([0.0, 1.0, 0.0])
# Flexion (alpha increasing) rotates +x towards +z, i.e. about -y.
FLEXION_AXIS = -LATERAL_AXIS


@dataclass(frozen=True)
class Direct:
    """Straight cable from arm anchor to forearm anchor."""


@dataclass(frozen=True)
class ElbowGuide:
    """Cable redirected through a point pulley fixed anterior to the elbow."""

    guide_point_offset: float = 0.030

    def guide_point(self) -> np.ndarray:
        return np.array([self.guide_point_offset, 0.0, 0.0])


@dataclass(frozen=True)
class ForearmFollowing:
    """Straight cable whose forearm anchor rotates with pronation/supination."""


Routing = Direct | ElbowGuide | ForearmFollowing


@dataclass(frozen=True)
class Ring:
    radius: float
    offset_from_elbow: float
    anchor_angles: tuple[float, ...]


@dataclass(frozen=True)
class Motor:
    pulley_radius: float = 0.010
    max_torque: float = 1.0
    max_speed: float = 6.0
    efficiency: float = 0.7


@dataclass(frozen=True)
class TensionLimits:
    t_min: float = 1.0
    t_max: float = 60.0


@dataclass(frozen=True)
class DeviceConfig:
    name: str
    cable_count: int
    arm_ring: Ring
    forearm_ring: Ring
    routing: tuple[Routing, ...]
    motor: Motor = field(default_factory=Motor)
    tension_limits: TensionLimits = field(default_factory=TensionLimits)


@dataclass(frozen=True)
class JointState:
    alpha: float = 0.0
    beta: float = 0.0
    alpha_dot: float = 0.0
    beta_dot: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "alpha_dot", "beta_dot"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"JointState.{name} must be finite")


@dataclass(frozen=True)
class RangeOfMotion:
    alpha_min: float
    alpha_max: float
    beta_min: float
    beta_max: float

    def __post_init__(self):
        if not (self.alpha_min < self.alpha_max and self.beta_min < self.beta_max):
            raise ValueError("RangeOfMotion requires min < max on both axes")


# Average human elbow/forearm range: +-60 deg flexion/extension, +-50 deg pronosupination.
DEFAULT_ROM = RangeOfMotion(
    alpha_min=math.radians(-60.0),
    alpha_max=math.radians(60.0),
    beta_min=math.radians(-50.0),
    beta_max=math.radians(50.0),
)


class Version(str, Enum):
    CADEL = "cadel"
    CADEL3 = "cadel3"
    LCADEL = "lcadel"


# Reference electrical power per version, watts.
REFERENCE_POWER_W = {Version.CADEL: 3.8, Version.CADEL3: 2.66, Version.LCADEL: 2.0}

ARM_RING_RADIUS = 0.050
ARM_RING_OFFSET = 0.120
FOREARM_RING_RADIUS = 0.030
FOREARM_RING_OFFSET = 0.220
GUIDE_OFFSET = 0.030


def _deg(*values: float) -> tuple[float, ...]:
    return tuple(math.radians(v) for v in values)


def build_preset(version: Version | str) -> DeviceConfig:
    """Return the validated geometry of one device version.

    Cable index 0 is always the right-side (lateral, +y) cable.

    * ``cadel``  -- four independent direct cables: lateral, medial,
      anterior, posterior.
    * ``cadel3`` -- same layout; the anterior cable (index 2) runs over an
      elbow guide pulley.
    * ``lcadel`` -- two side cables whose forearm anchors follow the
      forearm rotation.
    """
    version = Version(version)
    if version is Version.LCADEL:
        angles = _deg(90.0, -90.0)
        routing: tuple[Routing, ...] = (ForearmFollowing(), ForearmFollowing())
    else:
        angles = _deg(90.0, -90.0, 0.0, 180.0)
        routing = (Direct(),) * 4
        if version is Version.CADEL3:
            routing = (Direct(), Direct(), ElbowGuide(GUIDE_OFFSET), Direct())
    config = DeviceConfig(
        name=version.value,
        cable_count=len(angles),
        arm_ring=Ring(ARM_RING_RADIUS, ARM_RING_OFFSET, angles),
        forearm_ring=Ring(FOREARM_RING_RADIUS, FOREARM_RING_OFFSET, angles),
        routing=routing,
    )
    return validate_config(config)


def validate_config(config: DeviceConfig) -> DeviceConfig:
    """Return ``config`` unchanged or raise InvalidGeometry listing every violation."""
    problems = []
    if config.cable_count not in (2, 4):
        problems.append(f"cable_count: must be 2 or 4, got {config.cable_count}")
    for label, ring in (("arm_ring", config.arm_ring), ("forearm_ring", config.forearm_ring)):
        if not ring.radius > 0:
            problems.append(f"{label}.radius: must be > 0, got {ring.radius}")
        if not ring.offset_from_elbow > 0:
            problems.append(f"{label}.offset_from_elbow: must be > 0, got {ring.offset_from_elbow}")
        if len(ring.anchor_angles) != config.cable_count:
            problems.append(
                f"{label}.anchor_angles: anchor count {len(ring.anchor_angles)} "
                f"!= cable_count {config.cable_count}"
            )
        if not all(math.isfinite(a) for a in ring.anchor_angles):
            problems.append(f"{label}.anchor_angles: must be finite")
    if len(config.routing) != config.cable_count:
        problems.append(
            f"routing: entry count {len(config.routing)} != cable_count {config.cable_count}"
        )
    for i, r in enumerate(config.routing):
        if not isinstance(r, (Direct, ElbowGuide, ForearmFollowing)):
            problems.append(f"routing[{i}]: unknown routing {r!r}")
        elif isinstance(r, ElbowGuide) and not r.guide_point_offset > 0:
            problems.append(f"routing[{i}].guide_point_offset: must be > 0")
    motor = config.motor
    if not motor.pulley_radius > 0:
        problems.append(f"motor.pulley_radius: must be > 0, got {motor.pulley_radius}")
    if not 0 < motor.efficiency <= 1:
        problems.append(f"motor.efficiency: must be in (0, 1], got {motor.efficiency}")
    if not motor.max_torque > 0:
        problems.append("motor.max_torque: must be > 0")
    if not motor.max_speed > 0:
        problems.append("motor.max_speed: must be > 0")
    limits = config.tension_limits
    if not limits.t_min >= 0:
        problems.append(f"tension_limits.t_min: must be >= 0, got {limits.t_min}")
    if not limits.t_min < limits.t_max:
        problems.append(
            f"tension_limits: t_min < t_max violated ({limits.t_min} >= {limits.t_max})"
        )
    if problems:
        raise InvalidGeometry(problems)
    return config


def forearm_frame(alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Forearm axis and its anterior (flexor-side) normal at flexion ``alpha``."""
    ca, sa = math.cos(alpha), math.sin(alpha)
    return np.array([ca, 0.0, sa]), np.array([-sa, 0.0, ca])


def arm_anchor(config: DeviceConfig, i: int) -> np.ndarray:
    ring = config.arm_ring
    th = ring.anchor_angles[i]
    return np.array([ring.radius * math.cos(th), ring.radius * math.sin(th), ring.offset_from_elbow])


def forearm_anchor_angle(config: DeviceConfig, i: int, beta: float) -> float:
    th = config.forearm_ring.anchor_angles[i]
    if isinstance(config.routing[i], ForearmFollowing):
        th += beta
    return th


def forearm_anchor(config: DeviceConfig, i: int, alpha: float, beta: float) -> np.ndarray:
    ring = config.forearm_ring
    axis, normal = forearm_frame(alpha)
    phi = forearm_anchor_angle(config, i, beta)
    return ring.offset_from_elbow * axis + ring.radius * (
        math.cos(phi) * normal + math.sin(phi) * LATERAL_AXIS
    )


def anchor_positions(config: DeviceConfig, joint: JointState) -> list[tuple[np.ndarray, np.ndarray]]:
    """(arm_point, forearm_point) world coordinates for every cable, metres."""
    return [
        (arm_anchor(config, i), forearm_anchor(config, i, joint.alpha, joint.beta))
        for i in range(config.cable_count)
    ]
