import { describe, expect, it } from "vitest";

import { BoundEnv, ApiError, runEnvConformance, ServiceClient } from "../src/index.js";
import { BASE_URL } from "./config.js";

const ENV_NAMES = [
  "PyFlyt/QuadX-Hover-v0",
  "PyFlyt/QuadX-Waypoints-v0",
  "PyFlyt/Fixedwing-Waypoints-v0",
  "PyFlyt/Rocket-Landing-v0",
];

describe("environment API conformance", () => {
  it("publishes exactly the four environment names", async () => {
    const names = await new ServiceClient(BASE_URL).listEnvs();
    expect(names).toEqual(ENV_NAMES);
  });

  for (const name of ENV_NAMES) {
    it(`passes the conformance checker: ${name}`, async () => {
      const report = await runEnvConformance(BASE_URL, name);
      expect(report.env).toBe(name);
      expect(report.checks).toContain("closed");
    });
  }

  it("rejects unknown environment names with the valid list", async () => {
    await expect(BoundEnv.make(BASE_URL, "PyFlyt/NoSuchEnv-v0")).rejects.toSatisfy(
      (error: unknown) =>
        error instanceof ApiError &&
        error.status === 404 &&
        error.detail.includes("valid names"),
    );
  });

  it("exposes the documented action sizes", async () => {
    const quad = await BoundEnv.make(BASE_URL, "PyFlyt/QuadX-Hover-v0");
    expect(quad.spaces.action_size).toBe(4);
    await quad.close();
    const rocket = await BoundEnv.make(BASE_URL, "PyFlyt/Rocket-Landing-v0");
    expect(rocket.spaces.action_size).toBe(7);
    await rocket.close();
  });

  it("pads target deltas to a fixed block with a mask", async () => {
    const env = await BoundEnv.make(BASE_URL, "PyFlyt/QuadX-Waypoints-v0", {
      waypoint_count: 3,
    });
    const { observation } = await env.reset(5);
    const padded = env.paddedTargetDeltas(observation);
    expect(padded.capacity).toBe(3);
    expect(padded.count).toBe(3);
    expect(Array.from(padded.mask)).toEqual([1, 1, 1]);
    expect(padded.values).toHaveLength(9);
    await env.close();
  });
});
