import { ContractError, ServiceClient } from "./client.js";
import { BoundEnv } from "./env.js";
import type { Observation } from "./types.js";

const STEP_CAP = 2000;

export interface ConformanceReport {
  env: string;
  steps: number;
  checks: string[];
}

function expect(condition: boolean, message: string): void {
  if (!condition) {
    throw new Error(`conformance violation: ${message}`);
  }
}

function checkObservation(env: BoundEnv, observation: Observation): void {
  expect(
    observation.attitude.length === env.spaces.attitude_size,
    `attitude length ${observation.attitude.length} != ${env.spaces.attitude_size}`,
  );
  expect(observation.attitude.every(Number.isFinite), "attitude entries must be finite");
  if (env.spaces.waypoint_count != null) {
    const deltas = observation.target_deltas;
    expect(Array.isArray(deltas), "waypoint env must expose target_deltas");
    expect(
      (deltas as number[][]).length <= env.spaces.waypoint_count,
      "more target rows than the configured waypoint count",
    );
    for (const row of deltas as number[][]) {
      expect(row.length === 3 && row.every(Number.isFinite), "each target delta is a finite 3-vector");
    }
    const padded = env.paddedTargetDeltas(observation);
    expect(padded.capacity === env.spaces.waypoint_count, "padded capacity mismatch");
    expect(padded.values.length === padded.capacity * 3, "padded block length mismatch");
  } else {
    expect(observation.target_deltas == null, "non-waypoint env must not expose target_deltas");
  }
}

async function expectContractError(run: () => Promise<unknown>, label: string): Promise<void> {
  try {
    await run();
  } catch (error) {
    expect(error instanceof ContractError, `${label} must raise a contract error, got ${error}`);
    return;
  }
  expect(false, `${label} must raise a contract error`);
}

/**
 * Drive one environment through the full calling convention and fail
 * loudly on any deviation. Returns a summary of what was checked.
 */
export async function runEnvConformance(baseUrl: string, name: string): Promise<ConformanceReport> {
  const checks: string[] = [];
  const client = new ServiceClient(baseUrl);
  const published = await client.listEnvs();
  expect(published.includes(name), `${name} missing from /envs`);
  checks.push("listed");

  const env = await BoundEnv.make(baseUrl, name);
  expect(env.spaces.action_size > 0, "action_size must be positive");
  expect(env.spaces.action_low === -1 && env.spaces.action_high === 1, "action bounds are [-1, 1]");
  checks.push("spaces");

  // step before any reset is a contract error
  await expectContractError(
    () => env.step(new Array<number>(env.spaces.action_size).fill(0)),
    "step before reset",
  );

  const first = await env.reset(1234);
  const second = await env.reset(1234);
  expect(
    JSON.stringify(first.observation) === JSON.stringify(second.observation),
    "same seed must reproduce the same initial observation",
  );
  checkObservation(env, first.observation);
  checks.push("seeded reset");

  const zero = new Array<number>(env.spaces.action_size).fill(0);
  await expectContractError(() => env.step(zero.slice(1)), "wrong action length");
  await expectContractError(() => env.step(zero.map(() => Number.NaN)), "NaN action");
  checks.push("action validation");

  let steps = 0;
  let ended = false;
  for (; steps < STEP_CAP; steps += 1) {
    const result = await env.step(zero);
    expect(Number.isFinite(result.reward), "reward must be finite");
    expect(typeof result.terminated === "boolean", "terminated must be boolean");
    expect(typeof result.truncated === "boolean", "truncated must be boolean");
    expect(typeof result.info === "object" && result.info !== null, "info must be an object");
    checkObservation(env, result.observation);
    if (result.terminated || result.truncated) {
      ended = true;
      break;
    }
  }
  expect(ended, `episode must end within ${STEP_CAP} zero-action steps`);
  checks.push(`episode ended after ${steps + 1} steps`);

  await expectContractError(() => env.step(zero), "step after episode end");
  const revived = await env.reset(7);
  checkObservation(env, revived.observation);
  checks.push("reset revives");

  await env.close();
  await expectContractError(() => env.reset(0), "use after close");
  checks.push("closed");

  return { env: name, steps: steps + 1, checks };
}
