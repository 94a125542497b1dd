"""Rocket landing: drop from altitude, touch down softly on the pad.

The 7-wide action is [fin_x, fin_y, fin_cyclic, ignition, throttle,
gimbal_a, gimbal_b], each in [-1, 1]; ignition is boolean (> 0) and the
throttle clips to [0, 1]. The vehicle starts the drop with 1% of its fuel
capacity, enough for roughly one braking burn.

A landing is safe when the first pad contact is slower than 1 m/s and the
vehicle then holds an upright halt (attitude within 5 degrees, speed and
rates below 0.1) for half a second. A pad contact at or above 1 m/s is
fatal, and ground contact anywhere else ends the episode with the crash
penalty. Pad contact takes precedence over the ground penalty.
"""

from __future__ import annotations

import math

import numpy as np

from ..drones import build_drone, load_builtin_config
from .base import FlightEnv
from .rewards import rocket_landing_reward

PAD_RADIUS = 2.0          # m, 4 m diameter pad centered at the origin
FUEL_FRACTION = 0.01
SAFE_CONTACT_SPEED = 1.0  # m/s
HALT_ATTITUDE = math.radians(5.0)
HALT_SPEED = 0.1          # m/s and rad/s
HALT_HOLD_SECONDS = 0.5
# the drop starts laterally offset from the pad (seeded draw), so a
# ballistic fall lands on plain ground, not the pad
OFFSET_RANGE = (15.0, 30.0)


class RocketLandingEnv(FlightEnv):
    env_id = "PyFlyt/Rocket-Landing-v0"
    action_size = 7
    attitude_size = 28
    vehicle = "rocket"
    default_duration = 30.0
    default_flight_bound = 1000.0  # unused: the rocket terminates on contact, not bounds

    def _build_drone(self):
        return build_drone(load_builtin_config(self.vehicle), fuel_fraction=FUEL_FRACTION)

    def _setup(self):
        self.aviary.set_mode(0, -1)
        radius = self.np_random.uniform(*OFFSET_RANGE)
        bearing = self.np_random.uniform(0.0, 2.0 * math.pi)
        self.drone.state.position[0] = radius * math.cos(bearing)
        self.drone.state.position[1] = radius * math.sin(bearing)
        self._settle_steps = 0
        self._touched_down = False

    def _apply_action(self, action):
        self.aviary.set_setpoint(0, action)

    def _transition(self, events):
        state = self.drone.state
        position = state.position
        pad_distance = float(np.linalg.norm(position))
        speed = float(np.linalg.norm(state.velocity))
        on_pad_zone = math.hypot(position[0], position[1]) <= PAD_RADIUS

        ground_events = [e for e in events if e.kind == "ground"]
        pad_terminal = False
        ground_terminal = False
        safe = False
        landing = None

        if ground_events:
            if not on_pad_zone:
                ground_terminal = True
            else:
                hard_impact = max(e.impact_speed for e in ground_events) >= SAFE_CONTACT_SPEED
                if hard_impact and not self._touched_down:
                    pad_terminal = True
                else:
                    self._touched_down = True
                    if self._upright_halt(state, speed):
                        self._settle_steps += 1
                    else:
                        self._settle_steps = 0
                    if self._settle_steps >= math.ceil(HALT_HOLD_SECONDS * self.agent_hz):
                        pad_terminal = True
                        safe = True
        else:
            self._touched_down = False
            self._settle_steps = 0

        if pad_terminal:
            landing = "safe" if safe else "fatal"
        reward = rocket_landing_reward(
            pad_distance, speed, pad_terminal, ground_terminal, safe, self.sparse_reward
        )
        terminated = pad_terminal or ground_terminal
        info = {
            "collision": bool(ground_events),
            "landing": landing,
            "on_pad": on_pad_zone and bool(ground_events),
            "fuel_fraction": self.drone.booster.fuel / self.drone.booster.params.total_fuel,
        }
        return reward, terminated, info

    @staticmethod
    def _upright_halt(state, speed: float) -> bool:
        return (
            abs(state.angles[0]) < HALT_ATTITUDE
            and abs(state.angles[1]) < HALT_ATTITUDE
            and speed < HALT_SPEED
            and float(np.linalg.norm(state.body_rates)) < HALT_SPEED
        )
