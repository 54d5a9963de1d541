"""Position-controlled flexion/extension exercise simulation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Infeasible, RoMViolation
from .geometry import DEFAULT_ROM, DeviceConfig, JointState, RangeOfMotion
from .kinematics import cable_geometry, cable_jacobian, check_rom
from .statics import LoadCase, gravity_torque, tension_distribution

JOINT_DAMPING = 0.05  # N*m*s/rad, bearing/joint losses


@dataclass(frozen=True)
class ControllerConfig:
    kp: float = 40.0
    kd: float = 4.0
    dt: float = 0.006
    torque_limit: float = 20.0

    def __post_init__(self):
        if not (self.kp > 0 and self.kd >= 0 and self.dt > 0 and self.torque_limit > 0):
            raise ValueError("ControllerConfig requires kp > 0, kd >= 0, dt > 0, torque_limit > 0")


@dataclass(frozen=True)
class TrajectorySpec:
    """Repeated flexion cycle: rise, hold, return, hold (each cycle)."""

    alpha_start: float = 0.0
    alpha_end: float = math.radians(60.0)
    rise_time: float = 1.5
    hold_time: float = 0.5
    cycles: int = 1
    profile: str = "minimum_jerk"

    def __post_init__(self):
        if self.rise_time <= 0 or self.hold_time < 0 or self.cycles < 1:
            raise ValueError("TrajectorySpec requires rise_time > 0, hold_time >= 0, cycles >= 1")
        if self.profile != "minimum_jerk":
            raise ValueError(f"unsupported profile {self.profile!r}")

    @property
    def duration(self) -> float:
        return self.cycles * 2.0 * (self.rise_time + self.hold_time)


def sample_count(duration: float, dt: float) -> int:
    """Rows in a record: floor(duration/dt) + 1 (guarding float round-off)."""
    return int(math.floor(duration / dt + 1e-9)) + 1


def minimum_jerk(x0: float, x1: float, T: float, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    s = np.clip(np.asarray(t, dtype=float) / T, 0.0, 1.0)
    pos = x0 + (x1 - x0) * (10 * s**3 - 15 * s**4 + 6 * s**5)
    vel = (x1 - x0) / T * (30 * s**2 - 60 * s**3 + 30 * s**4)
    return pos, vel


def generate_trajectory(
    spec: TrajectorySpec, dt: float, rom: RangeOfMotion = DEFAULT_ROM
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Sample times, desired alpha and desired alpha rate."""
    for label, value in (("alpha_start", spec.alpha_start), ("alpha_end", spec.alpha_end)):
        bad = check_rom(JointState(value, 0.0), rom)
        if bad:
            raise RoMViolation([f"{label}: {v}" for v in bad])
    times = np.arange(sample_count(spec.duration, dt)) * dt
    period = 2.0 * (spec.rise_time + spec.hold_time)
    tc = np.mod(times, period)
    # Last sample of the final cycle belongs to that cycle, not the next.
    tc[times >= spec.duration - 1e-12] = period

    pos = np.full_like(times, spec.alpha_start)
    vel = np.zeros_like(times)
    up = tc < spec.rise_time
    pos[up], vel[up] = minimum_jerk(spec.alpha_start, spec.alpha_end, spec.rise_time, tc[up])
    top = (tc >= spec.rise_time) & (tc < spec.rise_time + spec.hold_time)
    pos[top] = spec.alpha_end
    t_down = tc - (spec.rise_time + spec.hold_time)
    down = (t_down >= 0) & (t_down < spec.rise_time)
    pos[down], vel[down] = minimum_jerk(spec.alpha_end, spec.alpha_start, spec.rise_time, t_down[down])
    return times, pos, vel


def plant_step(
    state: JointState,
    applied_torque: float,
    load: LoadCase,
    dt: float,
    damping: float = JOINT_DAMPING,
) -> JointState:
    """Semi-implicit Euler step of the forearm as a rigid pendulum; beta is held."""
    if dt <= 0:
        raise ValueError("dt must be > 0")
    acc = (applied_torque - gravity_torque(load, state.alpha) - damping * state.alpha_dot) / load.inertia
    alpha_dot = state.alpha_dot + dt * acc
    return JointState(state.alpha + dt * alpha_dot, state.beta, alpha_dot, 0.0)


@dataclass
class ExerciseRecord:
    device: str
    payload_mass: float
    dt: float
    time: np.ndarray
    alpha_desired: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    lengths: np.ndarray
    tensions: np.ndarray
    motor_torques: np.ndarray
    power: np.ndarray
    efficiency: float

    @property
    def cable_count(self) -> int:
        return self.tensions.shape[1]

    @property
    def duration(self) -> float:
        return float(self.time[-1] - self.time[0])

    @property
    def energy(self) -> float:
        """Electrical-side energy, J (rectangle rule, one dt per sample)."""
        return float(np.sum(self.power) * self.dt)

    @property
    def average_power(self) -> float:
        return self.energy / self.duration

    @property
    def peak_motor_torque(self) -> float:
        return float(np.max(np.abs(self.motor_torques)))

    @property
    def peak_right_torque(self) -> float:
        return float(np.max(np.abs(self.motor_torques[:, 0])))

    @property
    def rms_tracking_error(self) -> float:
        return float(np.sqrt(np.mean((self.alpha_desired - self.alpha) ** 2)))


def simulate_exercise(
    config: DeviceConfig,
    load: LoadCase,
    traj: TrajectorySpec,
    ctl: ControllerConfig = ControllerConfig(),
    *,
    beta: float = 0.0,
    rom: RangeOfMotion = DEFAULT_ROM,
    damping: float = JOINT_DAMPING,
) -> ExerciseRecord:
    """Run the PD + gravity-feedforward loop, one control update per step."""
    times, alpha_d, alpha_dot_d = generate_trajectory(traj, ctl.dt, rom)
    n_rows, n = times.size, config.cable_count
    alpha = np.empty(n_rows)
    lengths = np.empty((n_rows, n))
    tensions = np.empty((n_rows, n))
    torques = np.empty((n_rows, n))
    power = np.empty(n_rows)
    eff = config.motor.efficiency

    state = JointState(alpha_d[0], beta, 0.0, 0.0)
    for k in range(n_rows):
        command = (
            gravity_torque(load, alpha_d[k])
            + ctl.kp * (alpha_d[k] - state.alpha)
            + ctl.kd * (alpha_dot_d[k] - state.alpha_dot)
        )
        command = min(max(command, -ctl.torque_limit), ctl.torque_limit)
        geo = cable_geometry(config, state)
        try:
            sol = tension_distribution(config, state, (command, 0.0), geo)
        except Infeasible as exc:
            raise Infeasible(exc.residual, step=k) from exc
        rates = cable_jacobian(config, state, geo) @ np.array([state.alpha_dot, state.beta_dot])
        alpha[k] = state.alpha
        lengths[k] = geo.lengths
        tensions[k] = sol.tensions
        torques[k] = sol.motor_torques
        power[k] = float(np.sum(np.maximum(0.0, -sol.tensions * rates))) / eff
        if k + 1 < n_rows:
            state = plant_step(state, float(sol.structure[0] @ sol.tensions), load, ctl.dt, damping)

    return ExerciseRecord(
        device=config.name,
        payload_mass=load.payload_mass,
        dt=ctl.dt,
        time=times,
        alpha_desired=alpha_d,
        alpha=alpha,
        beta=np.full(n_rows, beta),
        lengths=lengths,
        tensions=tensions,
        motor_torques=torques,
        power=power,
        efficiency=eff,
    )
