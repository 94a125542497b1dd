"""Fueled booster: throttleable thrust with fuel depletion.

The duty cycle follows the throttle through the same discrete first-order
filter as the motor, gated by the lit flag and fuel availability. Boosters
produce no torque about their thrust axis, and the fuel tank's mass and
inertia shrink with the remaining fuel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..rigidbody import AppliedLoad


@dataclass
class BoosterParams:
    total_fuel: float              # kg at full load
    max_fuel_rate: float           # kg/s at full duty
    inertia_max: np.ndarray        # fuel-tank inertia diagonal at full load
    min_thrust: float              # N
    max_thrust: float              # N
    reignitable: bool = True
    tau: float = 0.05              # ramp time constant, s
    noise_std: float = 0.0
    axis: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))
    position: np.ndarray = field(default_factory=lambda: np.zeros(3))
    tank_position: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        self.inertia_max = np.asarray(self.inertia_max, dtype=float).reshape(3)
        self.axis = np.asarray(self.axis, dtype=float).reshape(3)
        self.position = np.asarray(self.position, dtype=float).reshape(3)
        self.tank_position = np.asarray(self.tank_position, dtype=float).reshape(3)

    @property
    def min_duty(self) -> float:
        return self.min_thrust / self.max_thrust

    def validate(self, prefix: str = "") -> list[str]:
        problems = []
        if not self.total_fuel > 0.0:
            problems.append(f"{prefix}total_fuel: must be positive, got {self.total_fuel}")
        if not self.max_fuel_rate > 0.0:
            problems.append(f"{prefix}max_fuel_rate: must be positive, got {self.max_fuel_rate}")
        if not (self.inertia_max > 0.0).all():
            problems.append(f"{prefix}inertia_max: must be positive, got {self.inertia_max.tolist()}")
        if self.min_thrust < 0.0 or self.min_thrust >= self.max_thrust:
            problems.append(
                f"{prefix}min_thrust: must satisfy 0 <= min < max, "
                f"got min={self.min_thrust}, max={self.max_thrust}"
            )
        if not self.tau > 0.0:
            problems.append(f"{prefix}tau: must be positive, got {self.tau}")
        if self.noise_std < 0.0:
            problems.append(f"{prefix}noise_std: must be non-negative, got {self.noise_std}")
        if abs(float(np.linalg.norm(self.axis)) - 1.0) > 1e-9:
            problems.append(f"{prefix}axis: must be unit length, got {self.axis.tolist()}")
        return problems


class Booster:
    """One booster unit; stepped at the physics rate."""

    def __init__(self, params: BoosterParams, physics_hz: float, fuel_fraction: float = 1.0):
        problems = params.validate()
        if problems:
            raise ValueError("; ".join(problems))
        if params.tau * physics_hz < 1.0:
            raise ValueError(
                f"tau * physics_hz must be >= 1 for a stable discrete filter, "
                f"got {params.tau * physics_hz}"
            )
        self.params = params
        self._hz = float(physics_hz)
        self.duty = 0.0
        self.lit = False
        self.fuel = params.total_fuel * float(fuel_fraction)
        self.saturated = False

    def reset(self, fuel_fraction: float = 1.0):
        self.duty = 0.0
        self.lit = False
        self.fuel = self.params.total_fuel * float(fuel_fraction)
        self.saturated = False

    def step(self, ignition: bool, throttle: float, noise: float = 0.0):
        """Advance one physics tick.

        The lit flag updates first: a non-reignitable booster stays lit
        once ignited, a reignitable one tracks the ignition input. The
        duty update (including its noise term) is gated to zero when the
        booster is unlit or out of fuel.
        """
        if throttle < 0.0 or throttle > 1.0:
            throttle = min(max(throttle, 0.0), 1.0)
            self.saturated = True
        p = self.params
        self.lit = ((not p.reignitable) and self.lit) or bool(ignition)

        previous = self.duty
        if self.lit and self.fuel > 0.0:
            target = throttle * (1.0 - p.min_duty)
            filtered = (target - previous) / (p.tau * self._hz) + previous
            self.duty = filtered * (1.0 + p.noise_std * previous * noise)
        else:
            self.duty = 0.0
        self.fuel = max(0.0, self.fuel - self.duty * p.max_fuel_rate / self._hz)

    def thrust(self) -> float:
        return self.duty * self.params.max_thrust

    def loads(self) -> AppliedLoad:
        p = self.params
        return AppliedLoad(force=self.thrust() * p.axis, point=p.position)

    def fuel_inertia(self) -> np.ndarray:
        """Fuel-tank inertia diagonal, proportional to the remaining fuel."""
        p = self.params
        return (self.fuel / p.total_fuel) * p.inertia_max
