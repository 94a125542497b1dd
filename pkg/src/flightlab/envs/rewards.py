"""Reward functions for the shipped tasks, dense and sparse variants."""

from __future__ import annotations

import math

import numpy as np

CRASH_PENALTY = -100.0
WAYPOINT_BONUS = 100.0
SPARSE_STEP_PENALTY = -0.1

PAD_FATAL_PENALTY = -20.0
PAD_SAFE_BONUS = 100.0
GROUND_PENALTY = -100.0
PAD_DISTANCE_GAIN = 0.2


def hover_reward(state, crashed: bool, sparse: bool, target_height: float = 1.0) -> float:
    """Penalty for straying from a level hover above the origin.

    Dense: negative pitch/roll magnitude plus negative distance from the
    hover point. Sparse: a flat per-step penalty. Crashing costs -100 in
    both variants.
    """
    if crashed:
        return CRASH_PENALTY
    if sparse:
        return SPARSE_STEP_PENALTY
    roll, pitch = state.angles[0], state.angles[1]
    offset = state.position - np.array([0.0, 0.0, target_height])
    return -math.hypot(pitch, roll) - float(np.linalg.norm(offset))


def waypoint_reward(
    delta: float,
    delta_rate: float,
    reached: bool,
    crashed: bool,
    sparse: bool,
    approach_gain: float,
    closure_gain: float,
) -> float:
    """Shaped progress toward the current waypoint.

    Dense branches, in order: -100 on crash; +100 on reaching the
    waypoint; ``approach_gain / delta - closure_gain * delta_rate`` while
    closing (delta_rate < 0); plain ``1 / delta`` otherwise. The reach
    check precedes the reward, so ``delta`` is never inverted below the
    goal radius. Sparse keeps only the crash and waypoint terms.
    """
    if crashed:
        return CRASH_PENALTY
    if reached:
        return WAYPOINT_BONUS
    if sparse:
        return 0.0
    if delta_rate < 0.0:
        return approach_gain / delta - closure_gain * delta_rate
    return 1.0 / delta


def rocket_landing_reward(
    pad_distance: float,
    speed: float,
    pad_contact: bool,
    ground_contact: bool,
    landed_safe: bool,
    sparse: bool,
) -> float:
    """Landing shaping plus terminal outcomes.

    Dense: -0.2 * pad_distance and a -speed / pad_distance^2 penalty every
    step, plus +100/-20 when the episode ends on the pad (safe/fatal) or
    -100 when it ends on the ground anywhere else. Pad contact takes
    precedence over the ground penalty. Sparse keeps only the terminal
    terms.
    """
    if sparse:
        reward = 0.0
    else:
        reward = -PAD_DISTANCE_GAIN * pad_distance - speed / pad_distance**2
    if pad_contact:
        reward += PAD_SAFE_BONUS if landed_safe else PAD_FATAL_PENALTY
    elif ground_contact:
        reward += GROUND_PENALTY
    return reward
