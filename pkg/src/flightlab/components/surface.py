"""Flapped lifting surface with tabulated coefficient curves.

The lift/drag/moment coefficients are tabulated over the full angle-of-
attack range: a linear lift model with induced drag inside the stall
boundaries, flat-plate behavior outside them, and a linear blend across
each boundary. Flap deflection shifts the zero-lift angle and adds a
small drag increment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..frames import wrap_angle
from ..rigidbody import AppliedLoad

AIR_DENSITY = 1.225  # kg/m^3, constant (no altitude model)

# Half-width of the linear pre/post-stall blend at each stall boundary.
# Wide enough that the blended lift curve stays below ~6/rad of slope for
# lift slopes up to ~5/rad, keeping the tabulated curves visually and
# numerically continuous.
BLEND_HALF_WIDTH = math.radians(6.0)

TABLE_RESOLUTION = math.radians(0.5)

# Flat-plate coefficients used outside the stall boundaries.
_FLAT_PLATE_MOMENT = -0.42


@dataclass
class SurfaceParams:
    area: float                    # m^2
    span: float                    # m, used for the aspect ratio
    lift_slope: float              # 1/rad
    zero_lift_aoa: float = 0.0     # rad
    stall_aoa_pos: float = math.radians(15.0)
    stall_aoa_neg: float = math.radians(-15.0)
    zero_lift_drag: float = 0.02
    viscosity_correction: float = 0.95   # Oswald-style span efficiency
    chord_dir: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0]))
    normal_dir: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))
    position: np.ndarray = field(default_factory=lambda: np.zeros(3))
    flap_ratio: float = 0.0        # movable fraction of the chord
    max_deflection: float = 0.0    # rad; zero means the surface is fixed
    tau: float = 0.05              # flap actuation time constant, s
    # flap-model tunables
    flap_effectiveness: float = 0.9
    flap_exponent: float = 0.7
    flap_drag_gain: float = 0.01

    def __post_init__(self):
        self.chord_dir = np.asarray(self.chord_dir, dtype=float).reshape(3)
        self.normal_dir = np.asarray(self.normal_dir, dtype=float).reshape(3)
        self.position = np.asarray(self.position, dtype=float).reshape(3)

    def validate(self, prefix: str = "") -> list[str]:
        problems = []
        if not self.area > 0.0:
            problems.append(f"{prefix}area: must be positive, got {self.area}")
        if not self.span > 0.0:
            problems.append(f"{prefix}span: must be positive, got {self.span}")
        if not self.lift_slope > 0.0:
            problems.append(f"{prefix}lift_slope: must be positive, got {self.lift_slope}")
        if not self.stall_aoa_neg < self.zero_lift_aoa < self.stall_aoa_pos:
            problems.append(
                f"{prefix}zero_lift_aoa: must lie strictly between the stall angles, "
                f"got {self.stall_aoa_neg} < {self.zero_lift_aoa} < {self.stall_aoa_pos}"
            )
        if self.zero_lift_drag < 0.0:
            problems.append(f"{prefix}zero_lift_drag: must be non-negative, got {self.zero_lift_drag}")
        if not self.viscosity_correction > 0.0:
            problems.append(
                f"{prefix}viscosity_correction: must be positive, got {self.viscosity_correction}"
            )
        if not 0.0 <= self.flap_ratio <= 1.0:
            problems.append(f"{prefix}flap_ratio: must be in [0, 1], got {self.flap_ratio}")
        if self.max_deflection < 0.0:
            problems.append(f"{prefix}max_deflection: must be non-negative, got {self.max_deflection}")
        if not self.tau > 0.0:
            problems.append(f"{prefix}tau: must be positive, got {self.tau}")
        for name, axis in (("chord_dir", self.chord_dir), ("normal_dir", self.normal_dir)):
            if abs(float(np.linalg.norm(axis)) - 1.0) > 1e-9:
                problems.append(f"{prefix}{name}: must be unit length, got {axis.tolist()}")
        if abs(float(self.chord_dir @ self.normal_dir)) > 1e-9:
            problems.append(f"{prefix}normal_dir: must be orthogonal to chord_dir")
        return problems


@dataclass
class CoefficientCurves:
    """Tabulated C_L, C_D, C_M over angle of attack in [-pi, pi]."""

    alphas: np.ndarray
    lift: np.ndarray
    drag: np.ndarray
    moment: np.ndarray

    def sample(self, alpha: float) -> tuple[float, float, float]:
        alpha = float(wrap_angle(alpha))
        cl = float(np.interp(alpha, self.alphas, self.lift))
        cd = float(np.interp(alpha, self.alphas, self.drag))
        cm = float(np.interp(alpha, self.alphas, self.moment))
        return cl, cd, cm


def build_polar(params: SurfaceParams, resolution: float = TABLE_RESOLUTION) -> CoefficientCurves:
    """Tabulate the coefficient curves for one surface.

    Inside the stall boundaries the lift is linear in (alpha - alpha_0)
    and the drag is the zero-lift drag plus the induced term
    C_L^2 / (pi * AR * e); outside them flat-plate expressions take over,
    with a linear crossfade over a band at each stall boundary.
    """
    problems = params.validate()
    if problems:
        raise ValueError("; ".join(problems))

    steps = int(round(2.0 * math.pi / resolution))
    alphas = np.linspace(-math.pi, math.pi, steps + 1)

    aspect_ratio = params.span**2 / params.area
    induced_gain = 1.0 / (math.pi * aspect_ratio * params.viscosity_correction)
    cl_linear = params.lift_slope * (alphas - params.zero_lift_aoa)
    cd_linear = params.zero_lift_drag + induced_gain * cl_linear**2
    cm_linear = np.zeros_like(alphas)

    sin_a = np.sin(alphas)
    cos_a = np.cos(alphas)
    cl_plate = 2.0 * sin_a * cos_a
    # flat-plate pressure drag on top of the parasite floor, so the drag
    # never falls below the zero-lift drag anywhere on the curve
    cd_plate = params.zero_lift_drag + 2.0 * sin_a**2
    cm_plate = _FLAT_PLATE_MOMENT * sin_a

    # 0 = fully linear, 1 = fully flat-plate, ramping across each boundary
    h = BLEND_HALF_WIDTH
    weight = np.zeros_like(alphas)
    above = (alphas - (params.stall_aoa_pos - h)) / (2.0 * h)
    below = ((params.stall_aoa_neg + h) - alphas) / (2.0 * h)
    weight = np.maximum(weight, np.clip(above, 0.0, 1.0))
    weight = np.maximum(weight, np.clip(below, 0.0, 1.0))

    return CoefficientCurves(
        alphas=alphas,
        lift=(1.0 - weight) * cl_linear + weight * cl_plate,
        drag=(1.0 - weight) * cd_linear + weight * cd_plate,
        moment=(1.0 - weight) * cm_linear + weight * cm_plate,
    )


class LiftingSurface:
    """One surface; the flap is stepped at the physics rate."""

    def __init__(self, params: SurfaceParams, physics_hz: float):
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
        self.polar = build_polar(params)
        # span axis completes the right-handed (chord, span, normal) triad
        self.span_dir = np.cross(params.normal_dir, params.chord_dir)
        self.deflection = 0.0
        self.saturated = False

    def reset(self):
        self.deflection = 0.0
        self.saturated = False

    def step(self, command: float):
        """Advance the flap one physics tick toward a command in [-1, 1]."""
        if command < -1.0 or command > 1.0:
            command = min(max(command, -1.0), 1.0)
            self.saturated = True
        p = self.params
        self.deflection += (command * p.max_deflection - self.deflection) / (p.tau * self._hz)

    def zero_lift_shift(self) -> float:
        """Shift of the zero-lift angle produced by the current flap angle."""
        p = self.params
        if p.flap_ratio == 0.0:
            return 0.0
        return -p.flap_effectiveness * p.flap_ratio**p.flap_exponent * self.deflection

    def loads(self, local_airflow: np.ndarray, air_density: float = AIR_DENSITY) -> AppliedLoad:
        """Aerodynamic load from the air velocity at the surface (body frame).

        The airflow is projected onto the chord-normal plane; lift acts
        perpendicular to the projected flow, drag anti-parallel to it, and
        the moment about the span axis. Sideslip along the span is ignored.
        """
        if not air_density > 0.0:
            raise ValueError(f"air_density must be positive, got {air_density}")
        p = self.params
        motion = -np.asarray(local_airflow, dtype=float)  # surface velocity through the air
        along_chord = float(motion @ p.chord_dir)
        along_normal = float(motion @ p.normal_dir)
        speed_sq = along_chord**2 + along_normal**2
        if speed_sq < 1e-12:
            return AppliedLoad(point=p.position)

        alpha = math.atan2(-along_normal, along_chord)
        cl, cd, cm = self.polar.sample(alpha - self.zero_lift_shift())
        cd += p.flap_drag_gain * abs(self.deflection) * p.flap_ratio

        pressure_area = 0.5 * air_density * p.area * speed_sq
        flow_dir = (along_chord * p.chord_dir + along_normal * p.normal_dir) / math.sqrt(speed_sq)
        lift_dir = np.cross(flow_dir, self.span_dir)
        force = pressure_area * (cl * lift_dir - cd * flow_dir)
        torque = pressure_area * cm * self.span_dir
        return AppliedLoad(force=force, torque=torque, point=p.position)
