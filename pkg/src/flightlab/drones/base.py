"""Common vehicle abstraction: state, arming, modes, and stepping hooks.

A drone owns its rigid-body state and components. The aviary calls
``control_update`` at the control rate (recomputing actuator commands
from the active mode and setpoint) and ``physics_update`` at the physics
rate (stepping actuators and integrating the body).
"""

from __future__ import annotations

from enum import IntEnum

import numpy as np

from ..frames import ground_to_body
from ..rigidbody import (
    MassProperties,
    RigidBodyState,
    resolve_ground_contact,
    step_body,
)


class ConfigError(ValueError):
    """A vehicle configuration violates its invariants."""


class FlightMode(IntEnum):
    """Setpoint interpretation levels. QuadX supports all seven."""

    RAW = -1                  # raw actuator commands
    BODY_RATES = 0            # angular rates + thrust
    ANGLES_CLIMB = 1          # roll/pitch/yaw angles + climb rate
    VELOCITY_YAW_RATE = 2     # ground-frame velocity + yaw rate
    VELOCITY_YAW = 3          # ground-frame velocity + yaw angle
    POSITION_YAW_RATE = 4     # ground-frame position + yaw rate
    POSITION_YAW = 5          # ground-frame position + yaw angle


class PidStage:
    """Per-axis PID with output limits and a clamped integral term.

    The integral is stored in output units and clamped to the output
    limit, which is what bounds windup.
    """

    def __init__(self, kp, ki=0.0, kd=0.0, limit=np.inf, size=1):
        self.kp = np.broadcast_to(np.asarray(kp, dtype=float), (size,)).copy()
        self.ki = np.broadcast_to(np.asarray(ki, dtype=float), (size,)).copy()
        self.kd = np.broadcast_to(np.asarray(kd, dtype=float), (size,)).copy()
        self.limit = np.broadcast_to(np.asarray(limit, dtype=float), (size,)).copy()
        self.size = size
        self._integral = np.zeros(size)
        self._previous_error = np.zeros(size)
        self._primed = False

    def reset(self):
        self._integral[:] = 0.0
        self._previous_error[:] = 0.0
        self._primed = False

    def update(self, error, dt: float) -> np.ndarray:
        error = np.asarray(error, dtype=float).reshape(self.size)
        self._integral = np.clip(self._integral + self.ki * error * dt, -self.limit, self.limit)
        if self._primed:
            derivative = (error - self._previous_error) / dt
        else:
            derivative = np.zeros(self.size)
            self._primed = True
        self._previous_error = error.copy()
        return np.clip(self.kp * error + self._integral + self.kd * derivative, -self.limit, self.limit)


class Drone:
    """Base vehicle; subclasses assemble components and control laws."""

    kind = "drone"
    setpoint_size = 4
    supported_modes: tuple[FlightMode, ...] = (FlightMode.RAW,)
    default_mode = FlightMode.RAW

    def __init__(self, config, physics_hz: float, control_hz: float):
        problems = config.validate()
        if problems:
            raise ConfigError("; ".join(problems))
        self.config = config
        self.name = config.name
        self.physics_hz = float(physics_hz)
        self.control_hz = float(control_hz)
        self.collision_radius = float(config.collision_radius)
        self.base_mass = MassProperties(config.mass, config.inertia)
        self.state = RigidBodyState(
            position=config.start_position, angles=config.start_orientation
        )
        self.armed = False
        self.mode = self.default_mode
        self.setpoint = np.zeros(self.setpoint_size)

    # -- command surface -------------------------------------------------

    def reset(self):
        self.state = RigidBodyState(
            position=self.config.start_position, angles=self.config.start_orientation
        )
        self.armed = False
        self.mode = self.default_mode
        self.setpoint = np.zeros(self.setpoint_size)

    def set_mode(self, mode):
        mode = FlightMode(mode)
        if mode not in self.supported_modes:
            raise ValueError(f"{self.kind} does not support flight mode {int(mode)}")
        self.mode = mode

    def set_setpoint(self, setpoint):
        setpoint = np.asarray(setpoint, dtype=float)
        if setpoint.shape != (self.setpoint_size,):
            raise ValueError(
                f"setpoint for {self.kind} must have {self.setpoint_size} entries, "
                f"got shape {setpoint.shape}"
            )
        if not np.isfinite(setpoint).all():
            raise ValueError("setpoint must be finite")
        self.setpoint = setpoint.copy()

    def set_armed(self, armed: bool):
        self.armed = bool(armed)

    # -- stepping hooks ---------------------------------------------------

    @property
    def noise_count(self) -> int:
        """Standard-normal draws consumed per physics step."""
        return 0

    def control_update(self, dt: float):
        raise NotImplementedError

    def physics_update(self, dt: float, noise: np.ndarray) -> tuple[bool, float]:
        raise NotImplementedError

    def aux_state(self) -> np.ndarray:
        """Normalized component statuses appended to observations."""
        return np.zeros(0)

    # -- helpers ----------------------------------------------------------

    def body_velocity(self) -> np.ndarray:
        return ground_to_body(self.state.angles) @ self.state.velocity

    def local_airflow(self, point: np.ndarray) -> np.ndarray:
        """Air velocity relative to a body-frame point (still air assumed)."""
        return -(self.body_velocity() + np.cross(self.state.body_rates, point))

    def mass_properties(self) -> MassProperties:
        return self.base_mass

    def _advance(self, loads, dt: float) -> tuple[bool, float]:
        self.state = step_body(self.state, self.mass_properties(), loads, dt)
        self.state, contacted, impact_speed = resolve_ground_contact(
            self.state, self.collision_radius
        )
        return contacted, impact_speed
