import { ApiError, ContractError, ServiceClient } from "./client.js";
import type {
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

/**
 * One environment session bound over HTTP.
 *
 * Holds nothing but the session handle and the cached space descriptors;
 * all simulation state lives on the service side.
 */
export class BoundEnv {
  readonly name: string;
  readonly spaces: SpaceInfo;
  readonly agentHz: number;
  readonly maxSteps: number;

  private readonly client: ServiceClient;
  private readonly sessionId: string;
  private done = true;
  private everReset = false;
  private closed = false;

  private constructor(client: ServiceClient, info: SessionInfo) {
    this.client = client;
    this.sessionId = info.session_id;
    this.name = info.env;
    this.spaces = info.spaces;
    this.agentHz = info.agent_hz;
    this.maxSteps = info.max_steps;
  }

  /** Open a session for one of the published environment names. */
  static async make(baseUrl: string, name: string, options: EnvOptions = {}): Promise<BoundEnv> {
    const client = new ServiceClient(baseUrl);
    const info = await client.post<SessionInfo>("/sessions", { env: name, options });
    return new BoundEnv(client, info);
  }

  async reset(seed: number | null = null): Promise<ResetResult> {
    this.assertOpen();
    const result = await this.client.post<ResetResult>(
      `/sessions/${this.sessionId}/reset`,
      { seed },
    );
    this.done = false;
    this.everReset = true;
    return result;
  }

  async step(action: number[], override?: Override): Promise<StepResult> {
    this.assertOpen();
    if (!this.everReset) {
      throw new ContractError("call reset() before step()");
    }
    if (this.done) {
      throw new ContractError("episode has ended (terminated or truncated); call reset()");
    }
    if (action.length !== this.spaces.action_size) {
      throw new ContractError(
        `${this.name} takes ${this.spaces.action_size} action entries, got ${action.length}`,
      );
    }
    if (action.some((v) => !Number.isFinite(v))) {
      throw new ContractError("action must be finite");
    }
    const body: { action: number[]; override?: Override } = { action };
    if (override) {
      body.override = override;
    }
    const result = await this.client.post<StepResult>(`/sessions/${this.sessionId}/step`, body);
    this.done = result.terminated || result.truncated;
    return result;
  }

  async close(): Promise<void> {
    if (this.closed) {
      return;
    }
    this.closed = true;
    try {
      await this.client.delete(`/sessions/${this.sessionId}`);
    } catch (error) {
      if (!(error instanceof ApiError && error.status === 404)) {
        throw error;
      }
    }
  }

  /** Pad the waypoint block to the session's fixed capacity. */
  paddedTargetDeltas(observation: Observation): PaddedTargetDeltas {
    const capacity = this.spaces.waypoint_count ?? 0;
    const rows = observation.target_deltas ?? [];
    if (rows.length > capacity) {
      throw new ContractError(
        `observation carries ${rows.length} waypoint rows but capacity is ${capacity}`,
      );
    }
    const values = new Float64Array(capacity * 3);
    const mask = new Uint8Array(capacity);
    rows.forEach((row, i) => {
      values.set(row, i * 3);
      mask[i] = 1;
    });
    return { values, mask, count: rows.length, capacity };
  }

  private assertOpen(): void {
    if (this.closed) {
      throw new ContractError("session is closed");
    }
  }
}

export type { Info, Observation, ResetResult, StepResult };
