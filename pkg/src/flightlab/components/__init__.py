"""Modular actuator and aerosurface models used to assemble vehicles."""

from .booster import Booster, BoosterParams
from .gimbal import Gimbal, GimbalParams
from .motor import Motor, MotorParams
from .surface import (
    AIR_DENSITY,
    CoefficientCurves,
    LiftingSurface,
    SurfaceParams,
    build_polar,
)

__all__ = [
    "AIR_DENSITY",
    "Booster",
    "BoosterParams",
    "CoefficientCurves",
    "Gimbal",
    "GimbalParams",
    "LiftingSurface",
    "Motor",
    "MotorParams",
    "SurfaceParams",
    "build_polar",
]
