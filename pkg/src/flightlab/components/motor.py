"""Brushless-motor-driven propeller model.

RPM follows the throttle through a discrete first-order filter with
optional multiplicative fluctuation noise; thrust and reaction torque
are quadratic in RPM.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..rigidbody import AppliedLoad


@dataclass
class MotorParams:
    tau: float                     # ramp time constant, s
    max_rpm: float                 # RPM at full throttle
    thrust_coeff: float            # N / RPM^2
    torque_coeff: float = 0.0      # N*m / RPM^2
    noise_std: float = 0.0         # fluctuation std, 1/RPM
    axis: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))
    spin: int = 1                  # reaction torque sign about the axis
    position: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        self.axis = np.asarray(self.axis, dtype=float).reshape(3)
        self.position = np.asarray(self.position, dtype=float).reshape(3)

    def validate(self, prefix: str = "") -> list[str]:
        problems = []
        if not self.tau > 0.0:
            problems.append(f"{prefix}tau: must be positive, got {self.tau}")
        if not self.max_rpm > 0.0:
            problems.append(f"{prefix}max_rpm: must be positive, got {self.max_rpm}")
        if not self.thrust_coeff > 0.0:
            problems.append(f"{prefix}thrust_coeff: must be positive, got {self.thrust_coeff}")
        if self.torque_coeff < 0.0:
            problems.append(f"{prefix}torque_coeff: must be non-negative, got {self.torque_coeff}")
        if self.noise_std < 0.0:
            problems.append(f"{prefix}noise_std: must be non-negative, got {self.noise_std}")
        if abs(float(np.linalg.norm(self.axis)) - 1.0) > 1e-9:
            problems.append(f"{prefix}axis: must be unit length, got {self.axis.tolist()}")
        if self.spin not in (-1, 1):
            problems.append(f"{prefix}spin: must be +1 or -1, got {self.spin}")
        if not np.isfinite(self.position).all():
            problems.append(f"{prefix}position: must be finite, got {self.position.tolist()}")
        return problems


class Motor:
    """One propeller unit; stepped at the physics rate."""

    def __init__(self, params: MotorParams, physics_hz: float):
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
        self.rpm = 0.0
        self.saturated = False

    def reset(self, rpm: float = 0.0):
        self.rpm = float(rpm)
        self.saturated = False

    def step(self, throttle: float, noise: float = 0.0) -> float:
        """Advance one physics tick toward ``throttle`` in [-1, 1]."""
        if throttle < -1.0 or throttle > 1.0:
            throttle = min(max(throttle, -1.0), 1.0)
            self.saturated = True
        p = self.params
        previous = self.rpm
        filtered = (throttle * p.max_rpm - previous) / (p.tau * self._hz) + previous
        # noise scales with the pre-update RPM
        self.rpm = filtered * (1.0 + p.noise_std * previous * noise)
        return self.rpm

    def loads(self) -> AppliedLoad:
        """Thrust along the motor axis plus reaction torque about it.

        Quadratic in RPM; the sign follows the spin direction so a
        reversed motor produces reversed thrust and reaction torque.
        """
        p = self.params
        signed_sq = self.rpm * abs(self.rpm)
        force = p.thrust_coeff * signed_sq * p.axis
        torque = p.spin * p.torque_coeff * signed_sq * p.axis
        return AppliedLoad(force=force, torque=torque, point=p.position)
