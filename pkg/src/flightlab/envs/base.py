"""Reset/step environment contract shared by the four shipped tasks.

Observations are dicts with an ``attitude`` vector laid out as

    [body_rates(3), angles(3), body_velocity(3), position(3),
     previous_action(n), aux(k)]

plus, for waypoint tasks, a ``target_deltas`` array holding the vector to
each remaining waypoint in the body frame. ``step`` returns the standard
(observation, reward, terminated, truncated, info) tuple.
"""

from __future__ import annotations

import numpy as np

from ..aviary import Aviary, LoopRates
from ..drones import build_drone, load_builtin_config
from ..drones.base import FlightMode
from ..frames import ground_to_body


class ContractError(ValueError):
    """The caller broke the environment calling convention."""


class FlightEnv:
    """One vehicle, one task; deterministic given the reset seed."""

    env_id = "flight-env"
    action_size = 4
    attitude_size = 20  # 12 state entries + previous action + aux block
    vehicle = "quadx_crazyflie"
    default_duration = 10.0
    default_flight_bound = 10.0

    def __init__(
        self,
        sparse_reward: bool = False,
        agent_hz: int = 30,
        max_duration: float | None = None,
        flight_bound: float | None = None,
    ):
        # validates divisibility against the fixed 240/120 physics/control rates
        self.rates = LoopRates(agent=int(agent_hz))
        self.sparse_reward = bool(sparse_reward)
        self.agent_hz = int(agent_hz)
        duration = self.default_duration if max_duration is None else float(max_duration)
        if not duration > 0.0:
            raise ValueError(f"max_duration must be positive, got {duration}")
        self.max_duration = duration
        self.max_steps = int(round(duration * agent_hz))
        bound = self.default_flight_bound if flight_bound is None else float(flight_bound)
        if not bound > 0.0:
            raise ValueError(f"flight_bound must be positive, got {bound}")
        self.flight_bound = bound
        self.aviary = None
        self.drone = None
        self._done = True
        self._steps = 0
        self._override = None
        self._prev_action = np.zeros(self.action_size)

    # -- contract ----------------------------------------------------------

    def reset(self, seed=None) -> tuple[dict, dict]:
        env_entropy, aviary_entropy = np.random.SeedSequence(seed).spawn(2)
        self.np_random = np.random.default_rng(env_entropy)
        self.drone = self._build_drone()
        self.aviary = Aviary([self.drone], rates=self.rates, seed=aviary_entropy)
        self.aviary.set_armed(0, True)
        self._prev_action = np.zeros(self.action_size)
        self._steps = 0
        self._done = False
        self._override = None
        self._setup()
        return self._observe(), self._info()

    def step(self, action) -> tuple[dict, float, bool, bool, dict]:
        if self.aviary is None:
            raise ContractError("call reset() before step()")
        if self._done:
            raise ContractError("episode has ended (terminated or truncated); call reset()")
        action = np.asarray(action, dtype=float)
        if action.shape != (self.action_size,):
            raise ContractError(
                f"{self.env_id} takes a {self.action_size}-entry action, got shape {action.shape}"
            )
        if not np.isfinite(action).all():
            raise ContractError("action must be finite")

        if self._override is not None:
            mode, setpoint = self._override
            self.aviary.set_mode(0, mode)
            self.aviary.set_setpoint(0, setpoint)
        else:
            self._apply_action(action)
        events = self.aviary.step()
        self._steps += 1

        reward, terminated, info = self._transition(events)
        truncated = not terminated and self._steps >= self.max_steps
        self._done = terminated or truncated
        self._prev_action = action.copy()
        merged = self._info()
        merged.update(info)
        return self._observe(), float(reward), bool(terminated), truncated, merged

    def close(self):
        self.aviary = None
        self.drone = None
        self._done = True

    # -- scripted-controller side channel -----------------------------------

    def set_override(self, mode, setpoint):
        """Route subsequent steps through a flight-controller mode directly.

        The action passed to ``step`` is still recorded as the previous
        action, but actuation follows the override until it is cleared.
        """
        mode = FlightMode(int(mode))
        setpoint = np.asarray(setpoint, dtype=float)
        self._override = (mode, setpoint)

    def clear_override(self):
        self._override = None

    # -- hooks ---------------------------------------------------------------

    def _build_drone(self):
        return build_drone(load_builtin_config(self.vehicle))

    def _setup(self):
        pass

    def _apply_action(self, action: np.ndarray):
        raise NotImplementedError

    def _transition(self, events) -> tuple[float, bool, dict]:
        raise NotImplementedError

    # -- observation -----------------------------------------------------------

    def _observe(self) -> dict:
        state = self.drone.state
        attitude = np.concatenate(
            [
                state.body_rates,
                state.angles,
                self.drone.body_velocity(),
                state.position,
                self._prev_action,
                self.drone.aux_state(),
            ]
        )
        return {"attitude": attitude}

    def _info(self) -> dict:
        return {
            "tick": self.aviary.physics_ticks if self.aviary else 0,
            "collision": False,
            "out_of_bounds": False,
            "waypoint_reached": False,
            "landing": None,
        }

    def _crashed(self, events, bound: float) -> tuple[bool, bool]:
        """(ground-or-collision contact, out of the flight bounds)."""
        contact = any(e.kind in ("ground", "collision") for e in events)
        p = self.drone.state.position
        out = bool(abs(p[0]) > bound or abs(p[1]) > bound or p[2] > bound)
        return contact, out


def body_frame_deltas(targets: np.ndarray, position: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Rotate ground-frame offsets to each target into the body frame."""
    if len(targets) == 0:
        return np.zeros((0, 3))
    rotation = ground_to_body(angles)
    return (targets - position) @ rotation.T
