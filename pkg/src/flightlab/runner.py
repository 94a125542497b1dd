"""Episode runner shared by the CLI and tests.

Runs episodes against either an in-process environment or a live service
session (see ``client.RemoteEnvHandle``), writing deterministic
trajectory logs: identical spec, identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .envs import ENV_NAMES, make_env
from .frames import body_to_ground
from .rigidbody import SimulationDiverged

QUADX_ENVS = ("PyFlyt/QuadX-Hover-v0", "PyFlyt/QuadX-Waypoints-v0")
POLICY_KINDS = ("random", "zero", "scripted-pid")
POSITION_YAW_MODE = 5


@dataclass
class RunSpec:
    env: str
    seed: int = 0
    episodes: int = 1
    policy: str = "random"
    sparse: bool = False
    out: Path | None = None
    log_format: str = "csv"
    waypoint_count: int | None = None
    goal_radius: float | None = None
    agent_hz: int | None = None
    server: str | None = None

    def validate(self):
        if self.env not in ENV_NAMES:
            raise ValueError(f"unknown environment {self.env!r}; valid names: {list(ENV_NAMES)}")
        if self.episodes < 1:
            raise ValueError(f"episodes must be >= 1, got {self.episodes}")
        if self.policy not in POLICY_KINDS:
            raise ValueError(f"unknown policy {self.policy!r}; valid: {list(POLICY_KINDS)}")
        if self.policy == "scripted-pid" and self.env not in QUADX_ENVS:
            raise ValueError("the scripted-pid policy is defined for QuadX environments only")
        if self.log_format not in ("csv", "jsonl"):
            raise ValueError(f"log format must be csv or jsonl, got {self.log_format!r}")

    def env_options(self) -> dict:
        options = {"sparse_reward": self.sparse}
        if self.agent_hz is not None:
            options["agent_hz"] = self.agent_hz
        if self.waypoint_count is not None:
            options["waypoint_count"] = self.waypoint_count
        if self.goal_radius is not None:
            options["goal_radius"] = self.goal_radius
        return options


@dataclass
class EpisodeSummary:
    index: int
    seed: int
    steps: int
    episode_return: float
    outcome: str


# -- policies ---------------------------------------------------------------


class RandomPolicy:
    """Uniform actions in [-1, 1] from a per-episode seeded stream."""

    def __init__(self, action_size: int):
        self.action_size = action_size
        self._rng = np.random.default_rng(0)

    def begin_episode(self, seed: int):
        self._rng = np.random.default_rng(seed)

    def act(self, observation):
        return self._rng.uniform(-1.0, 1.0, self.action_size), None


class ZeroPolicy:
    def __init__(self, action_size: int):
        self.action_size = action_size

    def begin_episode(self, seed: int):
        pass

    def act(self, observation):
        return np.zeros(self.action_size), None


class ScriptedPidPolicy:
    """Feed goal positions to the flight controller's position-hold mode.

    Bypasses the rate-command action space through the environment's
    mode-override side channel; the zero action it submits is only logged.
    """

    def __init__(self, action_size: int):
        self.action_size = action_size

    def begin_episode(self, seed: int):
        pass

    def act(self, observation):
        attitude = observation["attitude"]
        angles = attitude[3:6]
        position = attitude[9:12]
        deltas = observation.get("target_deltas")
        if deltas is not None and len(deltas) > 0:
            target = position + body_to_ground(angles) @ np.asarray(deltas[0])
        else:
            target = np.array([0.0, 0.0, 1.0])  # the hover task's goal point
        override = (POSITION_YAW_MODE, [target[0], target[1], target[2], 0.0])
        return np.zeros(self.action_size), override


def make_policy(kind: str, action_size: int):
    if kind == "random":
        return RandomPolicy(action_size)
    if kind == "zero":
        return ZeroPolicy(action_size)
    if kind == "scripted-pid":
        return ScriptedPidPolicy(action_size)
    raise ValueError(f"unknown policy {kind!r}")


# -- env handles --------------------------------------------------------------


class LocalEnvHandle:
    """Directly wraps an in-process environment object."""

    def __init__(self, env):
        self.env = env
        self.env_name = env.env_id
        self.action_size = env.action_size

    def reset(self, seed):
        return self.env.reset(seed=seed)

    def step(self, action, override=None):
        if override is not None:
            self.env.set_override(*override)
        else:
            self.env.clear_override()
        return self.env.step(action)

    def close(self):
        self.env.close()


def open_handle(spec: RunSpec):
    if spec.server:
        from .client import RemoteEnvHandle

        return RemoteEnvHandle(spec.server, spec.env, spec.env_options())
    return LocalEnvHandle(make_env(spec.env, **spec.env_options()))


# -- trajectory logging --------------------------------------------------------


def format_float(value) -> str:
    """Shortest round-trip decimal form, for byte-stable logs."""
    return repr(float(value))


class TrajectoryWriter:
    """One record per agent step, csv or json-lines."""

    def __init__(self, path, log_format: str, attitude_size: int, action_size: int):
        self.path = Path(path)
        self.log_format = log_format
        self.attitude_size = attitude_size
        self.action_size = action_size
        self._handle = open(self.path, "w", encoding="utf-8", newline="\n")
        if log_format == "csv":
            columns = ["episode", "step", "tick"]
            columns += [f"att_{i}" for i in range(attitude_size)]
            columns += [f"act_{i}" for i in range(action_size)]
            columns += ["reward", "terminated", "truncated", "collision",
                        "waypoint_reached", "out_of_bounds", "landing"]
            self._handle.write(",".join(columns) + "\n")

    def record(self, episode, step, tick, attitude, action, reward, terminated, truncated, info):
        landing = info.get("landing") or ""
        if self.log_format == "csv":
            fields = [str(episode), str(step), str(tick)]
            fields += [format_float(v) for v in attitude]
            fields += [format_float(v) for v in action]
            fields += [
                format_float(reward),
                str(int(terminated)),
                str(int(truncated)),
                str(int(bool(info.get("collision")))),
                str(int(bool(info.get("waypoint_reached")))),
                str(int(bool(info.get("out_of_bounds")))),
                landing,
            ]
            self._handle.write(",".join(fields) + "\n")
        else:
            record = {
                "episode": episode,
                "step": step,
                "tick": tick,
                "attitude": [float(v) for v in attitude],
                "action": [float(v) for v in action],
                "reward": float(reward),
                "terminated": bool(terminated),
                "truncated": bool(truncated),
                "collision": bool(info.get("collision")),
                "waypoint_reached": bool(info.get("waypoint_reached")),
                "out_of_bounds": bool(info.get("out_of_bounds")),
                "landing": info.get("landing"),
            }
            self._handle.write(json.dumps(record, separators=(",", ":")) + "\n")

    def close(self):
        self._handle.close()


# -- the run loop ----------------------------------------------------------------


def summarize_outcome(terminated: bool, truncated: bool, info: dict) -> str:
    if truncated and not terminated:
        return "timeout"
    if info.get("landing") == "safe":
        return "landed_safe"
    if info.get("landing") == "fatal":
        return "landed_fatal"
    if info.get("collision") or info.get("out_of_bounds"):
        return "crashed"
    return "goal"


def interquartile_mean(values) -> float:
    values = sorted(float(v) for v in values)
    trim = len(values) // 4
    middle = values[trim: len(values) - trim] if len(values) > 3 else values
    return float(np.mean(middle))


def run(spec: RunSpec) -> list[EpisodeSummary]:
    """Execute the episodes; episode k is seeded with ``spec.seed + k``."""
    spec.validate()
    handle = open_handle(spec)
    policy = make_policy(spec.policy, handle.action_size)
    writer = None
    summaries = []
    try:
        for index in range(spec.episodes):
            episode_seed = spec.seed + index
            policy.begin_episode(episode_seed)
            try:
                observation, info = handle.reset(episode_seed)
                if writer is None and spec.out is not None:
                    writer = TrajectoryWriter(
                        spec.out, spec.log_format, len(observation["attitude"]), handle.action_size
                    )
                episode_return = 0.0
                steps = 0
                while True:
                    action, override = policy.act(observation)
                    observation, reward, terminated, truncated, info = handle.step(action, override)
                    episode_return += reward
                    steps += 1
                    if writer is not None:
                        writer.record(
                            index, steps, info.get("tick", 0), observation["attitude"],
                            action, reward, terminated, truncated, info,
                        )
                    if terminated or truncated:
                        break
                outcome = summarize_outcome(terminated, truncated, info)
            except SimulationDiverged:
                outcome = "diverged"
                episode_return = float("nan")
                steps = 0
            summaries.append(EpisodeSummary(index, episode_seed, steps, episode_return, outcome))
    finally:
        if writer is not None:
            writer.close()
        handle.close()
    return summaries
