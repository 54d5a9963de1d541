"""Kinematics, statics and exercise simulation for cable-driven elbow devices."""

from .errors import (
    CadelError,
    ConfigError,
    DegenerateGeometry,
    Infeasible,
    InvalidGeometry,
    NoConvergence,
    RoMViolation,
)
from .geometry import (
    DEFAULT_ROM,
    DeviceConfig,
    Direct,
    ElbowGuide,
    ForearmFollowing,
    JointState,
    RangeOfMotion,
    Version,
    anchor_positions,
    build_preset,
    validate_config,
)
from .kinematics import (
    CableLengths,
    cable_jacobian,
    check_rom,
    forward_kinematics,
    inverse_kinematics,
)
from .simulation import (
    ControllerConfig,
    ExerciseRecord,
    TrajectorySpec,
    generate_trajectory,
    plant_step,
    simulate_exercise,
)
from .statics import (
    CableSolution,
    LoadCase,
    gravity_torque,
    structure_rows,
    tension_distribution,
    wrench_feasible,
)
from .workspace import WorkspaceGrid, torque_vs_angle, workspace_map

__version__ = "0.1.0"
