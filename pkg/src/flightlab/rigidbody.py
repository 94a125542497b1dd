"""Deterministic 6-DOF rigid-body stepping over the ground plane z = 0.

Forces and torques are accumulated in the body frame, gravity is applied
in the ground frame, and the state advances with semi-implicit Euler at a
fixed timestep. Vehicles are approximated as spheres for ground contact
and inter-vehicle collision checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .frames import body_to_ground, euler_rate_matrix, wrap_angle

GRAVITY = 9.81


class SimulationDiverged(RuntimeError):
    """Raised when a body's state stops being finite."""


def _vec3(value) -> np.ndarray:
    out = np.asarray(value, dtype=float).reshape(3).copy()
    return out


@dataclass
class RigidBodyState:
    """Pose and velocities of one vehicle.

    ``position`` and ``velocity`` are ground frame; ``body_rates`` are the
    angular rates about the body axes. ``angles`` are (roll, pitch, yaw).
    """

    position: np.ndarray = field(default_factory=lambda: np.zeros(3))
    angles: np.ndarray = field(default_factory=lambda: np.zeros(3))
    velocity: np.ndarray = field(default_factory=lambda: np.zeros(3))
    body_rates: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        self.position = _vec3(self.position)
        self.angles = _vec3(self.angles)
        self.velocity = _vec3(self.velocity)
        self.body_rates = _vec3(self.body_rates)

    def copy(self) -> "RigidBodyState":
        return RigidBodyState(self.position, self.angles, self.velocity, self.body_rates)

    def is_finite(self) -> bool:
        return bool(
            np.isfinite(self.position).all()
            and np.isfinite(self.angles).all()
            and np.isfinite(self.velocity).all()
            and np.isfinite(self.body_rates).all()
        )


@dataclass
class MassProperties:
    """Mass and diagonal inertia (kg, kg*m^2)."""

    mass: float
    inertia: np.ndarray

    def __post_init__(self):
        self.inertia = _vec3(self.inertia)
        if not self.mass > 0.0:
            raise ValueError(f"mass must be positive, got {self.mass}")
        if not (self.inertia > 0.0).all():
            raise ValueError(f"inertia diagonal must be positive, got {self.inertia}")


@dataclass
class AppliedLoad:
    """A body-frame force/torque applied at a body-frame point.

    ``point`` is the offset from the center of mass; off-center forces
    contribute a ``point x force`` torque.
    """

    force: np.ndarray = field(default_factory=lambda: np.zeros(3))
    torque: np.ndarray = field(default_factory=lambda: np.zeros(3))
    point: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        self.force = _vec3(self.force)
        self.torque = _vec3(self.torque)
        self.point = _vec3(self.point)


def step_body(
    state: RigidBodyState,
    mass: MassProperties,
    loads: list[AppliedLoad],
    dt: float,
) -> RigidBodyState:
    """Advance one body by ``dt`` seconds under the given body-frame loads.

    Semi-implicit Euler: velocities update first, positions integrate the
    new velocities. The angular update uses the diagonal-inertia Euler
    equations including the gyroscopic term.
    """
    if not dt > 0.0:
        raise ValueError(f"dt must be positive, got {dt}")

    force_b = np.zeros(3)
    torque_b = np.zeros(3)
    for load in loads:
        force_b += load.force
        torque_b += load.torque + np.cross(load.point, load.force)

    force_g = body_to_ground(state.angles) @ force_b
    force_g[2] -= GRAVITY * mass.mass

    velocity = state.velocity + (force_g / mass.mass) * dt
    position = state.position + velocity * dt

    j = mass.inertia
    omega = state.body_rates
    gyro = np.cross(omega, j * omega)
    body_rates = omega + ((torque_b - gyro) / j) * dt
    angles = wrap_angle(state.angles + (euler_rate_matrix(state.angles) @ body_rates) * dt)

    new_state = RigidBodyState(position, angles, velocity, body_rates)
    if not new_state.is_finite():
        raise SimulationDiverged("rigid-body state became non-finite")
    return new_state


def resolve_ground_contact(
    state: RigidBodyState, contact_radius: float
) -> tuple[RigidBodyState, bool, float]:
    """Clamp a body against the ground plane.

    Contact occurs when the center sits strictly below ``contact_radius``.
    On contact the center is clamped to the radius, any downward velocity
    is zeroed, and the pre-clamp speed is reported as the impact speed.
    """
    if not contact_radius > 0.0:
        raise ValueError(f"contact_radius must be positive, got {contact_radius}")
    if state.position[2] >= contact_radius:
        return state, False, 0.0
    impact_speed = float(np.linalg.norm(state.velocity))
    clamped = state.copy()
    clamped.position[2] = contact_radius
    if clamped.velocity[2] < 0.0:
        clamped.velocity[2] = 0.0
    return clamped, True, impact_speed


def detect_collisions(
    states: list[RigidBodyState], radii: list[float]
) -> list[tuple[int, int]]:
    """All index pairs (i < j) whose contact spheres overlap."""
    if len(states) != len(radii):
        raise ValueError("states and radii must have the same length")
    n = len(states)
    if n < 2:
        return []
    positions = np.stack([s.position for s in states])
    r = np.asarray(radii, dtype=float)
    deltas = positions[:, None, :] - positions[None, :, :]
    distances = np.linalg.norm(deltas, axis=-1)
    limit = r[:, None] + r[None, :]
    hits = distances < limit
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if hits[i, j]:
                pairs.append((i, j))
    return pairs
