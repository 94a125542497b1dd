/** Wire types mirroring the service's request/response schemas. */

export interface EnvOptions {
  sparse_reward?: boolean;
  agent_hz?: number;
  max_duration?: number;
  waypoint_count?: number;
  goal_radius?: number;
}

export interface SpaceInfo {
  action_size: number;
  action_low: number;
  action_high: number;
  attitude_size: number;
  waypoint_count: number | null;
}

export interface SessionInfo {
  session_id: string;
  env: string;
  sparse_reward: boolean;
  agent_hz: number;
  max_steps: number;
  spaces: SpaceInfo;
}

export interface Observation {
  attitude: number[];
  target_deltas?: number[][] | null;
}

export type Info = Record<string, unknown>;

export interface ResetResult {
  observation: Observation;
  info: Info;
}

export interface StepResult {
  observation: Observation;
  reward: number;
  terminated: boolean;
  truncated: boolean;
  info: Info;
}

export interface Override {
  mode: number;
  setpoint: number[];
}

/**
 * Fixed-shape view of the variable-length waypoint block: rows beyond
 * `count` are zero and masked out, so downstream consumers with static
 * shape requirements can use it directly.
 */
export interface PaddedTargetDeltas {
  values: Float64Array; // length capacity * 3, row major
  mask: Uint8Array; // length capacity, 1 = live row
  count: number;
  capacity: number;
}
