"""Two-axis powered gimbal, typically used for thrust vectoring."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..frames import rodrigues_precomputed, skew


@dataclass
class GimbalParams:
    axis_a: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0]))
    axis_b: np.ndarray = field(default_factory=lambda: np.array([0.0, 1.0, 0.0]))
    limit_a: float = 0.2           # max angle about axis_a, rad
    limit_b: float = 0.2           # max angle about axis_b, rad
    tau: float = 0.05              # actuation time constant, s

    def __post_init__(self):
        self.axis_a = np.asarray(self.axis_a, dtype=float).reshape(3)
        self.axis_b = np.asarray(self.axis_b, dtype=float).reshape(3)

    def validate(self, prefix: str = "") -> list[str]:
        problems = []
        for name, axis in (("axis_a", self.axis_a), ("axis_b", self.axis_b)):
            if abs(float(np.linalg.norm(axis)) - 1.0) > 1e-9:
                problems.append(f"{prefix}{name}: must be unit length, got {axis.tolist()}")
        for name, limit in (("limit_a", self.limit_a), ("limit_b", self.limit_b)):
            if not limit > 0.0:
                problems.append(f"{prefix}{name}: must be positive, got {limit}")
        if not self.tau > 0.0:
            problems.append(f"{prefix}tau: must be positive, got {self.tau}")
        return problems


class Gimbal:
    """Two-axis joint with first-order angle response per axis.

    The skew matrices for both axes only depend on the axis directions,
    so they are precomputed once at construction.
    """

    def __init__(self, params: GimbalParams, physics_hz: float):
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
        self._w_a = skew(params.axis_a)
        self._w2_a = self._w_a @ self._w_a
        self._w_b = skew(params.axis_b)
        self._w2_b = self._w_b @ self._w_b
        self.angle_a = 0.0
        self.angle_b = 0.0
        self.saturated = False

    def reset(self):
        self.angle_a = 0.0
        self.angle_b = 0.0
        self.saturated = False

    def step(self, command_a: float, command_b: float):
        """Advance one physics tick toward the normalized commands in [-1, 1]."""
        commands = []
        for command in (command_a, command_b):
            if command < -1.0 or command > 1.0:
                command = min(max(command, -1.0), 1.0)
                self.saturated = True
            commands.append(command)
        p = self.params
        gain = 1.0 / (p.tau * self._hz)
        self.angle_a += gain * (commands[0] * p.limit_a - self.angle_a)
        self.angle_b += gain * (commands[1] * p.limit_b - self.angle_b)

    def rotation(self) -> np.ndarray:
        """Composite rotation matrix: axis-a rotation times axis-b rotation."""
        r_a = rodrigues_precomputed(self._w_a, self._w2_a, self.angle_a)
        r_b = rodrigues_precomputed(self._w_b, self._w2_b, self.angle_b)
        return r_a @ r_b
