"""Euler-angle frame conversions shared by every other module.

The ground frame is ENU: x east, y north, z up. The body frame is x
forward, y left, z up. Attitude is stored as (roll, pitch, yaw) in
radians, applied roll-pitch-yaw about the body axes.
"""

from __future__ import annotations

import math

import numpy as np

TWO_PI = 2.0 * math.pi

UNIT_TOLERANCE = 1e-9


def wrap_angle(angle):
    """Wrap an angle (scalar or array) into (-pi, pi]."""
    return -(np.mod(-np.asarray(angle) + math.pi, TWO_PI) - math.pi)


def ground_to_body(angles: np.ndarray) -> np.ndarray:
    """Rotation matrix taking ground-frame vectors into the body frame.

    ``v_body = ground_to_body(angles) @ v_ground``
    """
    roll, pitch, yaw = angles
    cr, sr = math.cos(roll), math.sin(roll)
    cp, sp = math.cos(pitch), math.sin(pitch)
    cy, sy = math.cos(yaw), math.sin(yaw)
    return np.array(
        [
            [cp * cy, cp * sy, -sp],
            [sr * sp * cy - cr * sy, sr * sp * sy + cr * cy, sr * cp],
            [cr * sp * cy + sr * sy, cr * sp * sy - sr * cy, cr * cp],
        ]
    )


def body_to_ground(angles: np.ndarray) -> np.ndarray:
    """Rotation matrix taking body-frame vectors into the ground frame."""
    return ground_to_body(angles).T


def skew(vector: np.ndarray) -> np.ndarray:
    """Cross-product matrix: ``skew(a) @ b == np.cross(a, b)``."""
    x, y, z = vector
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def rodrigues_precomputed(w: np.ndarray, w_squared: np.ndarray, angle: float) -> np.ndarray:
    # sin^2(angle/2) form instead of (1 - cos) for stability near 2*n*pi
    half = math.sin(0.5 * angle)
    return np.eye(3) + math.sin(angle) * w + (2.0 * half * half) * w_squared


def rodrigues(axis: np.ndarray, angle: float) -> np.ndarray:
    """Rotation matrix for a rotation of ``angle`` about a unit ``axis``."""
    axis = np.asarray(axis, dtype=float)
    norm = math.sqrt(float(axis @ axis))
    if abs(norm - 1.0) > UNIT_TOLERANCE:
        raise ValueError(f"rotation axis must be unit length, got |axis| = {norm}")
    w = skew(axis)
    return rodrigues_precomputed(w, w @ w, angle)


def euler_rate_matrix(angles: np.ndarray) -> np.ndarray:
    """Matrix mapping body angular rates to Euler angle rates.

    Singular at pitch = +-pi/2; cos(pitch) is clamped away from zero so
    the integrator produces large-but-finite rates there instead of NaN.
    """
    roll, pitch = angles[0], angles[1]
    cr, sr = math.cos(roll), math.sin(roll)
    cp = math.cos(pitch)
    if abs(cp) < 1e-6:
        cp = math.copysign(1e-6, cp if cp != 0.0 else 1.0)
    tp = math.sin(pitch) / cp
    return np.array(
        [
            [1.0, sr * tp, cr * tp],
            [0.0, cr, -sr],
            [0.0, sr / cp, cr / cp],
        ]
    )
