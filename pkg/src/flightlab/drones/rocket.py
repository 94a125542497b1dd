"""Scaled booster-powered rocket with a gimballed engine and four fins.

The setpoint is a raw 7-vector:

    [fin_x, fin_y, fin_cyclic, ignition, throttle, gimbal_a, gimbal_b]

``fin_x``/``fin_y`` command fin deflections producing forces along the
body x/y axes, ``fin_cyclic`` spins all four fins the same way for roll
about the body z axis, ``ignition`` is treated as a boolean (> 0), and
the throttle is clipped to [0, 1]. The gimbal tilts the booster thrust
vector about the body x/y axes. The vehicle's mass and inertia track the
remaining fuel.
"""

from __future__ import annotations

import numpy as np

from ..rigidbody import MassProperties
from .base import ConfigError, Drone, FlightMode

FIN_NAMES = ("fin_px", "fin_py", "fin_nx", "fin_ny")


class RocketDrone(Drone):
    kind = "rocket"
    setpoint_size = 7
    supported_modes = (FlightMode.RAW,)
    default_mode = FlightMode.RAW

    def __init__(self, config, physics_hz: float, control_hz: float, fuel_fraction: float = 1.0):
        from ..components import Booster, Gimbal, LiftingSurface

        super().__init__(config, physics_hz, control_hz)
        if len(config.boosters) != 1:
            raise ConfigError(f"rocket needs exactly 1 booster, got {len(config.boosters)}")
        if len(config.gimbals) != 1:
            raise ConfigError(f"rocket needs exactly 1 gimbal, got {len(config.gimbals)}")
        missing = [name for name in FIN_NAMES if name not in config.surfaces]
        if missing:
            raise ConfigError(f"rocket config is missing fins: {missing}")
        self.booster = Booster(config.boosters[0], physics_hz, fuel_fraction=fuel_fraction)
        self.gimbal = Gimbal(config.gimbals[0], physics_hz)
        self.fins = {name: LiftingSurface(config.surfaces[name], physics_hz) for name in FIN_NAMES}
        self._fuel_fraction = float(fuel_fraction)
        self._fin_commands = np.zeros(4)
        self._ignition = False
        self._throttle = 0.0
        self._gimbal_commands = np.zeros(2)

    def reset(self):
        super().reset()
        self.booster.reset(fuel_fraction=self._fuel_fraction)
        self.gimbal.reset()
        for fin in self.fins.values():
            fin.reset()
        self._fin_commands = np.zeros(4)
        self._ignition = False
        self._throttle = 0.0
        self._gimbal_commands = np.zeros(2)

    @property
    def noise_count(self) -> int:
        return 1

    def control_update(self, dt: float):
        if not self.armed:
            self._fin_commands = np.zeros(4)
            self._ignition = False
            self._throttle = 0.0
            self._gimbal_commands = np.zeros(2)
            return
        fin_x, fin_y, cyclic, ignition, throttle, gimbal_a, gimbal_b = self.setpoint
        # per-fin lift directions make these sign pairs produce net +x/+y
        # forces for positive commands; cyclic adds the same sense to all
        self._fin_commands = np.clip(
            np.array(
                [
                    -fin_y + cyclic,   # fin_px
                    fin_x + cyclic,    # fin_py
                    fin_y + cyclic,    # fin_nx
                    -fin_x + cyclic,   # fin_ny
                ]
            ),
            -1.0,
            1.0,
        )
        self._ignition = bool(ignition > 0.0)
        self._throttle = min(max(float(throttle), 0.0), 1.0)
        self._gimbal_commands = np.clip(np.array([gimbal_a, gimbal_b]), -1.0, 1.0)

    def physics_update(self, dt: float, noise: np.ndarray) -> tuple[bool, float]:
        self.booster.step(self._ignition, self._throttle, noise[0] if noise.size else 0.0)
        self.gimbal.step(self._gimbal_commands[0], self._gimbal_commands[1])

        thrust_load = self.booster.loads()
        thrust_load.force = self.gimbal.rotation() @ thrust_load.force
        loads = [thrust_load]
        for i, name in enumerate(FIN_NAMES):
            fin = self.fins[name]
            fin.step(self._fin_commands[i])
            loads.append(fin.loads(self.local_airflow(fin.params.position)))
        return self._advance(loads, dt)

    def mass_properties(self) -> MassProperties:
        fuel = self.booster.fuel
        inertia = self.base_mass.inertia + self.booster.fuel_inertia()
        # parallel-axis contribution of the fuel mass at the tank point
        tank = self.booster.params.tank_position
        tank_sq = float(tank @ tank)
        inertia = inertia + fuel * (tank_sq - tank**2)
        return MassProperties(self.base_mass.mass + fuel, inertia)

    def aux_state(self) -> np.ndarray:
        p = self.booster.params
        gimbal = self.gimbal
        values = [
            1.0 if self.booster.lit else 0.0,
            self.booster.fuel / p.total_fuel,
            self.booster.duty,
            gimbal.angle_a / gimbal.params.limit_a,
            gimbal.angle_b / gimbal.params.limit_b,
        ]
        for name in FIN_NAMES:
            fin = self.fins[name]
            limit = fin.params.max_deflection
            values.append(fin.deflection / limit if limit > 0.0 else 0.0)
        return np.array(values)
