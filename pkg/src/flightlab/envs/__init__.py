"""The four shipped environments behind a name registry."""

from .base import ContractError, FlightEnv
from .fixedwing_env import FixedwingWaypointsEnv
from .quadx_envs import QuadXHoverEnv, QuadXWaypointsEnv
from .rewards import hover_reward, rocket_landing_reward, waypoint_reward
from .rocket_env import RocketLandingEnv

ENV_CLASSES = {
    QuadXHoverEnv.env_id: QuadXHoverEnv,
    QuadXWaypointsEnv.env_id: QuadXWaypointsEnv,
    FixedwingWaypointsEnv.env_id: FixedwingWaypointsEnv,
    RocketLandingEnv.env_id: RocketLandingEnv,
}

ENV_NAMES = tuple(ENV_CLASSES)


def make_env(name: str, **options) -> FlightEnv:
    """Construct a shipped environment by its exact name."""
    try:
        env_class = ENV_CLASSES[name]
    except KeyError:
        raise ValueError(
            f"unknown environment {name!r}; valid names: {list(ENV_NAMES)}"
        ) from None
    return env_class(**options)


__all__ = [
    "ContractError",
    "ENV_CLASSES",
    "ENV_NAMES",
    "FixedwingWaypointsEnv",
    "FlightEnv",
    "QuadXHoverEnv",
    "QuadXWaypointsEnv",
    "RocketLandingEnv",
    "hover_reward",
    "make_env",
    "rocket_landing_reward",
    "waypoint_reward",
]
