"""Modular UAV flight-dynamics simulation with RL-style environments.

Quick start::

    from flightlab import make_env

    env = make_env("PyFlyt/QuadX-Hover-v0")
    observation, info = env.reset(seed=0)
    observation, reward, terminated, truncated, info = env.step([0, 0, 0, 0.4])
"""

__version__ = "0.1.0"

from .aviary import Aviary, LoopRates, schedule
from .drones import (
    DroneConfig,
    FlightMode,
    build_drone,
    load_builtin_config,
    load_drone_config,
)
from .envs import ENV_NAMES, make_env

__all__ = [
    "Aviary",
    "DroneConfig",
    "ENV_NAMES",
    "FlightMode",
    "LoopRates",
    "build_drone",
    "load_builtin_config",
    "load_drone_config",
    "make_env",
    "schedule",
    "__version__",
]
