export { ApiError, ContractError, ServiceClient } from "./client.js";
export { BoundEnv } from "./env.js";
export { runEnvConformance } from "./conformance.js";
export type {
  ConformanceReport,
} from "./conformance.js";
export type {
  EnvOptions,
  Info,
  Observation,
  Override,
  PaddedTargetDeltas,
  ResetResult,
  SessionInfo,
  SpaceInfo,
  StepResult,
} from "./types.js";
