"""QuadX tasks: hold a hover, or chase a sequence of waypoints.

Actions are body-rate setpoints plus thrust: [roll_rate, pitch_rate,
yaw_rate, thrust], each in [-1, 1]. Rates scale to the configured
maximum; thrust clips to [0, 1] so an all-zero action is an unpowered
vehicle.
"""

from __future__ import annotations

import numpy as np

from ..drones.base import FlightMode
from .base import FlightEnv, body_frame_deltas
from .rewards import hover_reward, waypoint_reward

RATE_SCALE = 3.0  # rad/s at full deflection


class QuadXHoverEnv(FlightEnv):
    """Hover at (0, 0, 1) for as long as possible."""

    env_id = "PyFlyt/QuadX-Hover-v0"
    action_size = 4
    vehicle = "quadx_crazyflie"
    default_duration = 10.0

    def _setup(self):
        self.aviary.set_mode(0, FlightMode.BODY_RATES)

    def _apply_action(self, action):
        setpoint = np.empty(4)
        setpoint[:3] = RATE_SCALE * action[:3]
        setpoint[3] = min(max(action[3], 0.0), 1.0)
        self.aviary.set_setpoint(0, setpoint)

    def _transition(self, events):
        contact, out = self._crashed(events, self.flight_bound)
        crashed = contact or out
        reward = hover_reward(self.drone.state, crashed, self.sparse_reward)
        return reward, crashed, {"collision": contact, "out_of_bounds": out}


class QuadXWaypointsEnv(FlightEnv):
    """Reach randomly placed waypoints, strictly in order."""

    env_id = "PyFlyt/QuadX-Waypoints-v0"
    action_size = 4
    vehicle = "quadx_crazyflie"
    default_duration = 20.0
    region_low = (-4.0, -4.0, 1.0)
    region_high = (4.0, 4.0, 4.0)
    approach_gain = 0.1
    closure_gain = 3.0
    default_goal_radius = 0.2

    def __init__(
        self,
        sparse_reward: bool = False,
        agent_hz: int = 30,
        max_duration: float | None = None,
        flight_bound: float | None = None,
        waypoint_count: int = 5,
        goal_radius: float | None = None,
    ):
        super().__init__(
            sparse_reward=sparse_reward,
            agent_hz=agent_hz,
            max_duration=max_duration,
            flight_bound=flight_bound,
        )
        if waypoint_count < 1:
            raise ValueError(f"waypoint_count must be >= 1, got {waypoint_count}")
        self.waypoint_count = int(waypoint_count)
        self.goal_radius = float(goal_radius if goal_radius is not None else self.default_goal_radius)
        if not self.goal_radius > 0.0:
            raise ValueError(f"goal_radius must be positive, got {self.goal_radius}")

    control_mode = FlightMode.BODY_RATES

    def _setup(self):
        self.aviary.set_mode(0, self.control_mode)
        self.targets = list(
            self.np_random.uniform(self.region_low, self.region_high, (self.waypoint_count, 3))
        )
        self._last_delta = self._target_distance()

    def _target_distance(self) -> float:
        return float(np.linalg.norm(self.targets[0] - self.drone.state.position))

    @property
    def current_target(self) -> np.ndarray | None:
        """Next waypoint in ground frame; None once all are consumed."""
        return self.targets[0].copy() if self.targets else None

    def _apply_action(self, action):
        setpoint = np.empty(4)
        setpoint[:3] = RATE_SCALE * action[:3]
        setpoint[3] = min(max(action[3], 0.0), 1.0)
        self.aviary.set_setpoint(0, setpoint)

    def _transition(self, events):
        contact, out = self._crashed(events, self.flight_bound)
        crashed = contact or out
        agent_dt = 1.0 / self.agent_hz

        delta = self._target_distance()
        delta_rate = (delta - self._last_delta) / agent_dt
        reached = not crashed and delta < self.goal_radius
        reward = waypoint_reward(
            delta,
            delta_rate,
            reached,
            crashed,
            self.sparse_reward,
            self.approach_gain,
            self.closure_gain,
        )
        if reached:
            self.targets.pop(0)
        terminated = crashed or not self.targets
        self._last_delta = self._target_distance() if self.targets else 0.0
        info = {
            "collision": contact,
            "out_of_bounds": out,
            "waypoint_reached": reached,
            "waypoints_remaining": len(self.targets),
        }
        return reward, terminated, info

    def _observe(self):
        observation = super()._observe()
        observation["target_deltas"] = body_frame_deltas(
            np.asarray(self.targets).reshape(-1, 3),
            self.drone.state.position,
            self.drone.state.angles,
        )
        return observation

    def _info(self):
        info = super()._info()
        info["waypoints_remaining"] = len(getattr(self, "targets", []))
        return info
