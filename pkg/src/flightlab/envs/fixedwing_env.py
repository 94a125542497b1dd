"""Fixedwing waypoint chase: the QuadX task scaled up 20x for a plane.

Actions are raw surface commands [aileron, elevator, rudder, throttle] in
[-1, 1]; throttle clips to [0, 1]. The vehicle launches at altitude with
cruise speed along +x.
"""

from __future__ import annotations

import numpy as np

from ..drones.base import FlightMode
from .quadx_envs import QuadXWaypointsEnv

CRUISE_SPEED = 13.5  # m/s


class FixedwingWaypointsEnv(QuadXWaypointsEnv):
    env_id = "PyFlyt/Fixedwing-Waypoints-v0"
    action_size = 4
    attitude_size = 21
    vehicle = "fixedwing"
    default_duration = 20.0
    default_flight_bound = 200.0
    region_low = (-80.0, -80.0, 20.0)
    region_high = (80.0, 80.0, 80.0)
    approach_gain = 1.0
    closure_gain = 3.0
    default_goal_radius = 2.0
    # raw actuator vehicle: the action is the setpoint
    control_mode = FlightMode.RAW

    def _build_drone(self):
        drone = super()._build_drone()
        drone.state.velocity = np.array([CRUISE_SPEED, 0.0, 0.0])
        return drone

    def _apply_action(self, action):
        self.aviary.set_setpoint(0, action)
