"""HTTP facade over the environments: one session per live episode stream.

Contract errors surface as 400s, unknown names/sessions as 404s, and a
diverged simulation as a 500 carrying the drone identity. Sessions are
in-memory; callers should DELETE them when done.
"""

from __future__ import annotations

import threading
import uuid

import numpy as np
from fastapi import FastAPI, HTTPException

from .. import __version__
from ..envs import ENV_NAMES, ContractError, FlightEnv, make_env
from ..rigidbody import SimulationDiverged
from .models import (
    CloseResponse,
    CreateSessionRequest,
    EnvListResponse,
    Observation,
    ResetRequest,
    ResetResponse,
    SessionInfo,
    SpaceInfo,
    StepRequest,
    StepResponse,
)


def _observation_model(observation: dict) -> Observation:
    deltas = observation.get("target_deltas")
    return Observation(
        attitude=[float(v) for v in observation["attitude"]],
        target_deltas=None if deltas is None else [[float(v) for v in row] for row in deltas],
    )


def _session_info(session_id: str, env: FlightEnv) -> SessionInfo:
    return SessionInfo(
        session_id=session_id,
        env=env.env_id,
        sparse_reward=env.sparse_reward,
        agent_hz=env.agent_hz,
        max_steps=env.max_steps,
        spaces=SpaceInfo(
            action_size=env.action_size,
            attitude_size=env.attitude_size,
            waypoint_count=getattr(env, "waypoint_count", None),
        ),
    )


class SessionStore:
    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: dict[str, FlightEnv] = {}

    def add(self, env: FlightEnv) -> str:
        session_id = uuid.uuid4().hex
        with self._lock:
            self._sessions[session_id] = env
        return session_id

    def get(self, session_id: str) -> FlightEnv:
        with self._lock:
            env = self._sessions.get(session_id)
        if env is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return env

    def remove(self, session_id: str) -> bool:
        with self._lock:
            return self._sessions.pop(session_id, None) is not None


def create_app() -> FastAPI:
    app = FastAPI(title="flightlab", version=__version__)
    store = SessionStore()

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "version": __version__}

    @app.get("/envs", response_model=EnvListResponse)
    def list_envs():
        return EnvListResponse(envs=list(ENV_NAMES))

    @app.post("/sessions", response_model=SessionInfo)
    def create_session(request: CreateSessionRequest):
        options = {
            "sparse_reward": request.options.sparse_reward,
            "agent_hz": request.options.agent_hz,
        }
        if request.options.max_duration is not None:
            options["max_duration"] = request.options.max_duration
        if request.options.waypoint_count is not None:
            options["waypoint_count"] = request.options.waypoint_count
        if request.options.goal_radius is not None:
            options["goal_radius"] = request.options.goal_radius
        try:
            env = make_env(request.env, **options)
        except ValueError as exc:
            status = 404 if "unknown environment" in str(exc) else 400
            raise HTTPException(status_code=status, detail=str(exc)) from exc
        except TypeError as exc:
            raise HTTPException(
                status_code=400, detail=f"invalid options for {request.env}: {exc}"
            ) from exc
        session_id = store.add(env)
        return _session_info(session_id, env)

    @app.post("/sessions/{session_id}/reset", response_model=ResetResponse)
    def reset_session(session_id: str, request: ResetRequest):
        env = store.get(session_id)
        observation, info = env.reset(seed=request.seed)
        return ResetResponse(observation=_observation_model(observation), info=info)

    @app.post("/sessions/{session_id}/step", response_model=StepResponse)
    def step_session(session_id: str, request: StepRequest):
        env = store.get(session_id)
        if request.override is not None:
            try:
                env.set_override(request.override.mode, request.override.setpoint)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
        else:
            env.clear_override()
        action = np.asarray(request.action, dtype=float)
        try:
            observation, reward, terminated, truncated, info = env.step(action)
        except ContractError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except SimulationDiverged as exc:
            raise HTTPException(status_code=500, detail=f"simulation diverged: {exc}") from exc
        return StepResponse(
            observation=_observation_model(observation),
            reward=float(reward),
            terminated=bool(terminated),
            truncated=bool(truncated),
            info=info,
        )

    @app.delete("/sessions/{session_id}", response_model=CloseResponse)
    def close_session(session_id: str):
        if not store.remove(session_id):
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return CloseResponse(closed=True)

    return app


app = create_app()
