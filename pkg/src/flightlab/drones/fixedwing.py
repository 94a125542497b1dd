"""Tube-and-wing aircraft: five lifting surfaces and one puller motor.

The setpoint is a raw actuator vector [aileron, elevator, rudder,
throttle]. Positive aileron rolls right-wing-down is avoided by feeding
opposite flap commands to the two ailerons; positive elevator pitches the
nose up; positive rudder yaws the nose right; throttle is clipped to
[0, 1] (there is no reverse thrust).
"""

from __future__ import annotations

import numpy as np

from .base import ConfigError, Drone, FlightMode

REQUIRED_SURFACES = ("main_wing", "aileron_left", "aileron_right", "elevator", "rudder")


class FixedwingDrone(Drone):
    kind = "fixedwing"
    setpoint_size = 4
    supported_modes = (FlightMode.RAW,)
    default_mode = FlightMode.RAW

    def __init__(self, config, physics_hz: float, control_hz: float):
        from ..components import LiftingSurface, Motor

        super().__init__(config, physics_hz, control_hz)
        missing = [name for name in REQUIRED_SURFACES if name not in config.surfaces]
        if missing:
            raise ConfigError(f"fixedwing config is missing surfaces: {missing}")
        if len(config.motors) != 1:
            raise ConfigError(f"fixedwing needs exactly 1 motor, got {len(config.motors)}")
        self.surfaces = {
            name: LiftingSurface(params, physics_hz)
            for name, params in config.surfaces.items()
        }
        self.motor = Motor(config.motors[0], physics_hz)
        self._surface_commands = {name: 0.0 for name in self.surfaces}
        self._throttle = 0.0

    def reset(self):
        super().reset()
        for surface in self.surfaces.values():
            surface.reset()
        self.motor.reset()
        self._surface_commands = {name: 0.0 for name in self.surfaces}
        self._throttle = 0.0

    @property
    def noise_count(self) -> int:
        return 1

    def control_update(self, dt: float):
        if not self.armed:
            self._surface_commands = {name: 0.0 for name in self.surfaces}
            self._throttle = 0.0
            return
        aileron, elevator, rudder, throttle = self.setpoint
        self._surface_commands = {
            "main_wing": 0.0,
            "aileron_left": float(aileron),
            "aileron_right": float(-aileron),
            "elevator": float(-elevator),  # tail downforce raises the nose
            "rudder": float(rudder),
        }
        self._throttle = min(max(float(throttle), 0.0), 1.0)

    def physics_update(self, dt: float, noise: np.ndarray) -> tuple[bool, float]:
        self.motor.step(self._throttle, noise[0] if noise.size else 0.0)
        loads = [self.motor.loads()]
        for name, surface in self.surfaces.items():
            surface.step(self._surface_commands[name])
            loads.append(surface.loads(self.local_airflow(surface.params.position)))
        return self._advance(loads, dt)

    def aux_state(self) -> np.ndarray:
        deflections = []
        for name in ("aileron_left", "aileron_right", "elevator", "rudder"):
            surface = self.surfaces[name]
            limit = surface.params.max_deflection
            deflections.append(surface.deflection / limit if limit > 0.0 else 0.0)
        deflections.append(self.motor.rpm / self.motor.params.max_rpm)
        return np.array(deflections)
