"""Vehicle assembly: configuration files plus the three shipped airframes."""

from .base import ConfigError, Drone, FlightMode, PidStage
from .config import (
    DroneConfig,
    builtin_config_path,
    load_builtin_config,
    load_drone_config,
    save_drone_config,
)
from .fixedwing import FixedwingDrone
from .quadx import QuadXDrone, quadx_mix
from .rocket import RocketDrone

VEHICLE_CLASSES = {
    "quadx": QuadXDrone,
    "fixedwing": FixedwingDrone,
    "rocket": RocketDrone,
}


def build_drone(config: DroneConfig, physics_hz: float = 240.0, control_hz: float = 120.0, **kwargs) -> Drone:
    """Instantiate the vehicle class named by ``config.kind``."""
    try:
        vehicle_class = VEHICLE_CLASSES[config.kind]
    except KeyError:
        raise ConfigError(
            f"unknown vehicle kind {config.kind!r}; expected one of {sorted(VEHICLE_CLASSES)}"
        ) from None
    return vehicle_class(config, physics_hz, control_hz, **kwargs)


__all__ = [
    "ConfigError",
    "Drone",
    "DroneConfig",
    "FixedwingDrone",
    "FlightMode",
    "PidStage",
    "QuadXDrone",
    "RocketDrone",
    "VEHICLE_CLASSES",
    "build_drone",
    "builtin_config_path",
    "load_builtin_config",
    "load_drone_config",
    "quadx_mix",
    "save_drone_config",
]
