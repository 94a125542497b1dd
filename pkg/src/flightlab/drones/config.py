"""Vehicle configuration files: YAML in, dataclasses out, and back.

One file fully describes a vehicle: mass properties, component list with
mount points, controller gains, and the starting pose. Serialization is
value-exact (floats survive a parse -> dump -> parse round trip).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from ..components import BoosterParams, GimbalParams, MotorParams, SurfaceParams
from .base import ConfigError

VEHICLE_KINDS = ("quadx", "fixedwing", "rocket")

_MOTOR_FIELDS = (
    "tau", "max_rpm", "thrust_coeff", "torque_coeff", "noise_std", "axis", "spin", "position",
)
_BOOSTER_FIELDS = (
    "total_fuel", "max_fuel_rate", "inertia_max", "min_thrust", "max_thrust",
    "reignitable", "tau", "noise_std", "axis", "position", "tank_position",
)
_GIMBAL_FIELDS = ("axis_a", "axis_b", "limit_a", "limit_b", "tau")
_SURFACE_FIELDS = (
    "area", "span", "lift_slope", "zero_lift_aoa", "stall_aoa_pos", "stall_aoa_neg",
    "zero_lift_drag", "viscosity_correction", "chord_dir", "normal_dir", "position",
    "flap_ratio", "max_deflection", "tau",
)


def _plain(value):
    if isinstance(value, np.ndarray):
        return [float(v) for v in value]
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)) and not isinstance(value, bool):
        return int(value)
    return value


def _params_to_dict(params, fields):
    return {name: _plain(getattr(params, name)) for name in fields}


@dataclass
class DroneConfig:
    name: str
    kind: str
    mass: float
    inertia: np.ndarray
    collision_radius: float
    start_position: np.ndarray = field(default_factory=lambda: np.zeros(3))
    start_orientation: np.ndarray = field(default_factory=lambda: np.zeros(3))
    motors: list[MotorParams] = field(default_factory=list)
    boosters: list[BoosterParams] = field(default_factory=list)
    gimbals: list[GimbalParams] = field(default_factory=list)
    surfaces: dict[str, SurfaceParams] = field(default_factory=dict)
    controller: dict = field(default_factory=dict)

    def __post_init__(self):
        self.inertia = np.asarray(self.inertia, dtype=float).reshape(3)
        self.start_position = np.asarray(self.start_position, dtype=float).reshape(3)
        self.start_orientation = np.asarray(self.start_orientation, dtype=float).reshape(3)

    def validate(self) -> list[str]:
        """All invariant violations, each naming the offending field."""
        problems = []
        if not self.name:
            problems.append("name: must be non-empty")
        if self.kind not in VEHICLE_KINDS:
            problems.append(f"kind: must be one of {VEHICLE_KINDS}, got {self.kind!r}")
        if not self.mass > 0.0:
            problems.append(f"mass: must be positive, got {self.mass}")
        if not (self.inertia > 0.0).all():
            problems.append(f"inertia: diagonal must be positive, got {self.inertia.tolist()}")
        if not self.collision_radius > 0.0:
            problems.append(f"collision_radius: must be positive, got {self.collision_radius}")
        for label, vec in (
            ("start_position", self.start_position),
            ("start_orientation", self.start_orientation),
        ):
            if not np.isfinite(vec).all():
                problems.append(f"{label}: must be finite, got {vec.tolist()}")
        if not self.motors and not self.boosters:
            problems.append("motors: vehicle needs at least one actuator (motor or booster)")
        for i, motor in enumerate(self.motors):
            problems += motor.validate(prefix=f"motors[{i}].")
        for i, booster in enumerate(self.boosters):
            problems += booster.validate(prefix=f"boosters[{i}].")
        for i, gimbal in enumerate(self.gimbals):
            problems += gimbal.validate(prefix=f"gimbals[{i}].")
        for surface_name, surface in self.surfaces.items():
            problems += surface.validate(prefix=f"surfaces[{surface_name}].")
        return problems

    def to_dict(self) -> dict:
        data = {
            "name": self.name,
            "kind": self.kind,
            "mass": _plain(self.mass),
            "inertia": _plain(self.inertia),
            "collision_radius": _plain(self.collision_radius),
            "start_position": _plain(self.start_position),
            "start_orientation": _plain(self.start_orientation),
        }
        if self.motors:
            data["motors"] = [_params_to_dict(m, _MOTOR_FIELDS) for m in self.motors]
        if self.boosters:
            data["boosters"] = [_params_to_dict(b, _BOOSTER_FIELDS) for b in self.boosters]
        if self.gimbals:
            data["gimbals"] = [_params_to_dict(g, _GIMBAL_FIELDS) for g in self.gimbals]
        if self.surfaces:
            data["surfaces"] = [
                {"name": name, **_params_to_dict(s, _SURFACE_FIELDS)}
                for name, s in self.surfaces.items()
            ]
        if self.controller:
            data["controller"] = {k: _plain(v) for k, v in self.controller.items()}
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "DroneConfig":
        try:
            surfaces = {}
            for entry in data.get("surfaces", []):
                entry = dict(entry)
                surface_name = entry.pop("name")
                surfaces[surface_name] = SurfaceParams(**entry)
            return cls(
                name=data["name"],
                kind=data["kind"],
                mass=data["mass"],
                inertia=data["inertia"],
                collision_radius=data["collision_radius"],
                start_position=data.get("start_position", [0.0, 0.0, 0.0]),
                start_orientation=data.get("start_orientation", [0.0, 0.0, 0.0]),
                motors=[MotorParams(**m) for m in data.get("motors", [])],
                boosters=[BoosterParams(**b) for b in data.get("boosters", [])],
                gimbals=[GimbalParams(**g) for g in data.get("gimbals", [])],
                surfaces=surfaces,
                controller=dict(data.get("controller", {})),
            )
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed vehicle config: {exc}") from exc

    def dumps(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False)


def load_drone_config(path) -> DroneConfig:
    with open(path, "r", encoding="utf-8") as handle:
        data = yaml.safe_load(handle)
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a mapping at the top level")
    return DroneConfig.from_dict(data)


def save_drone_config(config: DroneConfig, path):
    Path(path).write_text(config.dumps(), encoding="utf-8")


def builtin_config_path(name: str) -> Path:
    """Path of a shipped vehicle file: quadx_crazyflie, quadx_generic, fixedwing, rocket."""
    path = Path(__file__).parent / "data" / f"{name}.yaml"
    if not path.exists():
        available = sorted(p.stem for p in path.parent.glob("*.yaml"))
        raise ConfigError(f"no builtin vehicle named {name!r}; available: {available}")
    return path


def load_builtin_config(name: str) -> DroneConfig:
    return load_drone_config(builtin_config_path(name))
