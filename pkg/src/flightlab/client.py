"""Thin HTTP client for the environment-session service.

Mirrors the in-process environment contract so the runner can treat a
remote session exactly like a local environment.
"""

from __future__ import annotations

import numpy as np
import httpx

from .rigidbody import SimulationDiverged


class ServiceError(RuntimeError):
    """The service rejected a request."""

    def __init__(self, status_code: int, detail: str):
        super().__init__(f"HTTP {status_code}: {detail}")
        self.status_code = status_code
        self.detail = detail


def _check(response: httpx.Response) -> dict:
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        if response.status_code == 500 and "diverged" in str(detail):
            raise SimulationDiverged(str(detail))
        raise ServiceError(response.status_code, str(detail))
    return response.json()


def _to_observation(payload: dict) -> dict:
    observation = {"attitude": np.asarray(payload["attitude"], dtype=float)}
    deltas = payload.get("target_deltas")
    if deltas is not None:
        observation["target_deltas"] = np.asarray(deltas, dtype=float).reshape(-1, 3)
    return observation


class RemoteEnvHandle:
    """One service session, opened on construction and closed explicitly."""

    def __init__(self, base_url: str, env_name: str, options: dict | None = None, client=None):
        self._client = client or httpx.Client(base_url=base_url, timeout=30.0)
        self._owns_client = client is None
        self.env_name = env_name
        payload = _check(
            self._client.post("/sessions", json={"env": env_name, "options": options or {}})
        )
        self.session_id = payload["session_id"]
        self.spaces = payload["spaces"]
        self.action_size = int(payload["spaces"]["action_size"])

    def reset(self, seed=None):
        payload = _check(
            self._client.post(
                f"/sessions/{self.session_id}/reset",
                json={"seed": None if seed is None else int(seed)},
            )
        )
        return _to_observation(payload["observation"]), payload["info"]

    def step(self, action, override=None):
        body = {"action": [float(v) for v in np.asarray(action).ravel()]}
        if override is not None:
            mode, setpoint = override
            body["override"] = {
                "mode": int(mode),
                "setpoint": [float(v) for v in np.asarray(setpoint).ravel()],
            }
        payload = _check(self._client.post(f"/sessions/{self.session_id}/step", json=body))
        return (
            _to_observation(payload["observation"]),
            payload["reward"],
            payload["terminated"],
            payload["truncated"],
            payload["info"],
        )

    def close(self):
        try:
            self._client.delete(f"/sessions/{self.session_id}")
        finally:
            if self._owns_client:
                self._client.close()
