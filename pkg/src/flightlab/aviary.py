"""The simulation domain: vehicles, multi-rate scheduling, and events.

An aviary owns any number of drones and steps them deterministically:
each agent step runs ``control/agent`` control updates, each followed by
``physics/control`` physics sub-steps. After every physics sub-step,
ground contacts and inter-vehicle collisions are recorded. All noise
draws come from the single aviary RNG in registration order, and only
armed vehicles consume draws, so an idle vehicle never perturbs another
vehicle's trajectory.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .drones.base import Drone
from .rigidbody import SimulationDiverged, detect_collisions


class ConfigurationError(ValueError):
    """Loop rates that cannot be scheduled exactly."""


def schedule(physics_hz: int, control_hz: int, agent_hz: int) -> tuple[int, int]:
    """Exact integer step ratios (physics per control, control per agent).

    Rejects any rate set that would need fractional stepping.
    """
    if not (physics_hz >= control_hz >= agent_hz > 0):
        raise ConfigurationError(
            f"rates must satisfy physics >= control >= agent > 0, "
            f"got ({physics_hz}, {control_hz}, {agent_hz})"
        )
    if physics_hz % control_hz != 0:
        raise ConfigurationError(
            f"physics rate {physics_hz} is not divisible by control rate {control_hz}"
        )
    if control_hz % agent_hz != 0:
        raise ConfigurationError(
            f"control rate {control_hz} is not divisible by agent rate {agent_hz}"
        )
    return physics_hz // control_hz, control_hz // agent_hz


@dataclass(frozen=True)
class LoopRates:
    """Nested update frequencies in Hz; defaults 240/120/30."""

    physics: int = 240
    control: int = 120
    agent: int = 30

    def __post_init__(self):
        schedule(self.physics, self.control, self.agent)

    @property
    def physics_per_control(self) -> int:
        return self.physics // self.control

    @property
    def control_per_agent(self) -> int:
        return self.control // self.agent


@dataclass(frozen=True)
class Event:
    """One contact event recorded during an agent step."""

    kind: str            # "ground" or "collision"
    tick: int            # physics tick at which it occurred
    drone: int
    other: int = -1      # partner index for collisions
    impact_speed: float = 0.0


class Aviary:
    """Registry and stepper for a set of vehicles."""

    def __init__(self, drones: list[Drone], rates: LoopRates | None = None, seed=None):
        if not drones:
            raise ValueError("aviary needs at least one drone")
        self.drones = list(drones)
        self.rates = rates or LoopRates()
        self._rng = np.random.default_rng(seed)
        self.physics_ticks = 0
        self.control_updates = 0
        self.agent_steps = 0
        self.event_log: list[Event] = []

    # -- dispatch surface --------------------------------------------------

    def _drone(self, drone_id: int) -> Drone:
        if not isinstance(drone_id, (int, np.integer)) or not 0 <= drone_id < len(self.drones):
            raise LookupError(f"unknown drone id {drone_id!r}")
        return self.drones[drone_id]

    def set_setpoint(self, drone_id: int, setpoint):
        self._drone(drone_id).set_setpoint(setpoint)

    def set_mode(self, drone_id: int, mode):
        self._drone(drone_id).set_mode(mode)

    def set_armed(self, drone_id: int, armed: bool):
        self._drone(drone_id).set_armed(armed)

    # -- stepping ----------------------------------------------------------

    def step(self) -> list[Event]:
        """Advance one agent step; returns the events it produced."""
        control_dt = 1.0 / self.rates.control
        physics_dt = 1.0 / self.rates.physics
        radii = [d.collision_radius for d in self.drones]
        events: list[Event] = []

        for _ in range(self.rates.control_per_agent):
            for drone in self.drones:
                drone.control_update(control_dt)
            self.control_updates += 1

            for _ in range(self.rates.physics_per_control):
                for index, drone in enumerate(self.drones):
                    if drone.armed and drone.noise_count:
                        noise = self._rng.standard_normal(drone.noise_count)
                    else:
                        noise = np.zeros(0)
                    try:
                        contacted, impact_speed = drone.physics_update(physics_dt, noise)
                    except SimulationDiverged as exc:
                        raise SimulationDiverged(
                            f"drone {index} ({drone.name}): {exc}"
                        ) from exc
                    if contacted:
                        events.append(
                            Event("ground", self.physics_ticks + 1, index, impact_speed=impact_speed)
                        )
                self.physics_ticks += 1
                for i, j in detect_collisions([d.state for d in self.drones], radii):
                    events.append(Event("collision", self.physics_ticks, i, other=j))

        self.agent_steps += 1
        self.event_log.extend(events)
        return events
