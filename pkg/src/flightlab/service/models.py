"""Request/response schemas for the environment-session service."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class EnvOptions(BaseModel):
    sparse_reward: bool = False
    agent_hz: int = Field(default=30, ge=1)
    max_duration: Optional[float] = Field(default=None, gt=0)
    waypoint_count: Optional[int] = Field(default=None, ge=1)
    goal_radius: Optional[float] = Field(default=None, gt=0)


class CreateSessionRequest(BaseModel):
    env: str
    options: EnvOptions = EnvOptions()


class SpaceInfo(BaseModel):
    action_size: int
    action_low: float = -1.0
    action_high: float = 1.0
    attitude_size: int
    waypoint_count: Optional[int] = None


class SessionInfo(BaseModel):
    session_id: str
    env: str
    sparse_reward: bool
    agent_hz: int
    max_steps: int
    spaces: SpaceInfo


class EnvListResponse(BaseModel):
    envs: list[str]


class ResetRequest(BaseModel):
    seed: Optional[int] = None


class Observation(BaseModel):
    attitude: list[float]
    target_deltas: Optional[list[list[float]]] = None


class ResetResponse(BaseModel):
    observation: Observation
    info: dict[str, Any]


class Override(BaseModel):
    mode: int
    setpoint: list[float]


class StepRequest(BaseModel):
    action: list[float]
    override: Optional[Override] = None


class StepResponse(BaseModel):
    observation: Observation
    reward: float
    terminated: bool
    truncated: bool
    info: dict[str, Any]


class CloseResponse(BaseModel):
    closed: bool
