"""Flat key-value device config files (INI syntax, single ``[device]`` section).

SI units, angles in degrees.  Parsing is fail-closed: unknown keys, extra
sections and malformed values are errors.  Example::

    [device]
    name = lcadel
    cable_count = 2
    arm_ring_radius = 0.05
    arm_ring_offset = 0.12
    arm_anchor_angles_deg = 90, -90
    forearm_ring_radius = 0.03
    forearm_ring_offset = 0.22
    forearm_anchor_angles_deg = 90, -90
    routing = forearm_following, forearm_following
    pulley_radius = 0.01
    max_torque = 1.0
    max_speed = 6.0
    efficiency = 0.7
    t_min = 1.0
    t_max = 60.0

Comments start with ``;`` or ``#`` (inline comments need a space before
them).  ``routing`` entries are ``direct``, ``forearm_following`` or
``elbow_guide:<guide offset in metres>``.
"""

from __future__ import annotations

import configparser
import io
import math
from pathlib import Path

from .errors import ConfigError
from .geometry import (
    DeviceConfig,
    Direct,
    ElbowGuide,
    ForearmFollowing,
    Motor,
    Ring,
    Routing,
    TensionLimits,
    validate_config,
)

SECTION = "device"
REQUIRED = (
    "name",
    "cable_count",
    "arm_ring_radius",
    "arm_ring_offset",
    "arm_anchor_angles_deg",
    "forearm_ring_radius",
    "forearm_ring_offset",
    "forearm_anchor_angles_deg",
    "routing",
)
OPTIONAL = ("pulley_radius", "max_torque", "max_speed", "efficiency", "t_min", "t_max")


def _float(key: str, raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{key}: must be finite")
    return value


def _float_list(key: str, raw: str) -> tuple[float, ...]:
    items = [s.strip() for s in raw.split(",") if s.strip()]
    if not items:
        raise ConfigError(f"{key}: empty list")
    return tuple(_float(key, s) for s in items)


def _routing(raw: str) -> tuple[Routing, ...]:
    out: list[Routing] = []
    for item in (s.strip().lower() for s in raw.split(",")):
        if item == "direct":
            out.append(Direct())
        elif item == "forearm_following":
            out.append(ForearmFollowing())
        elif item.startswith("elbow_guide:"):
            out.append(ElbowGuide(_float("routing", item.split(":", 1)[1])))
        else:
            raise ConfigError(f"routing: unknown mode {item!r}")
    return tuple(out)


def _format_routing(r: Routing) -> str:
    if isinstance(r, ElbowGuide):
        return f"elbow_guide:{r.guide_point_offset!r}"
    return "forearm_following" if isinstance(r, ForearmFollowing) else "direct"


def loads_config(text: str) -> DeviceConfig:
    """Parse and validate config text; raises ConfigError or InvalidGeometry."""
    parser = configparser.ConfigParser(
        interpolation=None, default_section="__none__", inline_comment_prefixes=(";", "#")
    )
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    sections = parser.sections()
    if sections != [SECTION]:
        raise ConfigError(f"expected exactly one [{SECTION}] section, found {sections}")
    data = dict(parser[SECTION])
    unknown = sorted(set(data) - set(REQUIRED) - set(OPTIONAL))
    if unknown:
        raise ConfigError(f"unknown keys: {', '.join(unknown)}")
    missing = [k for k in REQUIRED if k not in data]
    if missing:
        raise ConfigError(f"missing keys: {', '.join(missing)}")

    try:
        cable_count = int(data["cable_count"])
    except ValueError:
        raise ConfigError(f"cable_count: expected an integer, got {data['cable_count']!r}") from None
    motor_defaults, limit_defaults = Motor(), TensionLimits()

    def opt(key, default):
        return _float(key, data[key]) if key in data else default

    config = DeviceConfig(
        name=data["name"].strip(),
        cable_count=cable_count,
        arm_ring=Ring(
            _float("arm_ring_radius", data["arm_ring_radius"]),
            _float("arm_ring_offset", data["arm_ring_offset"]),
            tuple(math.radians(a) for a in _float_list("arm_anchor_angles_deg", data["arm_anchor_angles_deg"])),
        ),
        forearm_ring=Ring(
            _float("forearm_ring_radius", data["forearm_ring_radius"]),
            _float("forearm_ring_offset", data["forearm_ring_offset"]),
            tuple(
                math.radians(a)
                for a in _float_list("forearm_anchor_angles_deg", data["forearm_anchor_angles_deg"])
            ),
        ),
        routing=_routing(data["routing"]),
        motor=Motor(
            pulley_radius=opt("pulley_radius", motor_defaults.pulley_radius),
            max_torque=opt("max_torque", motor_defaults.max_torque),
            max_speed=opt("max_speed", motor_defaults.max_speed),
            efficiency=opt("efficiency", motor_defaults.efficiency),
        ),
        tension_limits=TensionLimits(
            t_min=opt("t_min", limit_defaults.t_min), t_max=opt("t_max", limit_defaults.t_max)
        ),
    )
    return validate_config(config)


def load_config(path: str | Path) -> DeviceConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return loads_config(text)


def dumps_config(config: DeviceConfig) -> str:
    def angles(ring: Ring) -> str:
        return ", ".join(repr(math.degrees(a)) for a in ring.anchor_angles)

    parser = configparser.ConfigParser(interpolation=None)
    parser[SECTION] = {
        "name": config.name,
        "cable_count": str(config.cable_count),
        "arm_ring_radius": repr(config.arm_ring.radius),
        "arm_ring_offset": repr(config.arm_ring.offset_from_elbow),
        "arm_anchor_angles_deg": angles(config.arm_ring),
        "forearm_ring_radius": repr(config.forearm_ring.radius),
        "forearm_ring_offset": repr(config.forearm_ring.offset_from_elbow),
        "forearm_anchor_angles_deg": angles(config.forearm_ring),
        "routing": ", ".join(_format_routing(r) for r in config.routing),
        "pulley_radius": repr(config.motor.pulley_radius),
        "max_torque": repr(config.motor.max_torque),
        "max_speed": repr(config.motor.max_speed),
        "efficiency": repr(config.motor.efficiency),
        "t_min": repr(config.tension_limits.t_min),
        "t_max": repr(config.tension_limits.t_max),
    }
    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()


def dump_config(config: DeviceConfig, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(dumps_config(config))
    return path
