// End-to-end: a request assembled by the UI's scene logic must produce the
// identical verdict and path length whether it goes through the service or
// is replayed through the CLI, and shrinking eps across the tuned gateway
// gap must flip the rendered verdict.

import { execFile, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";
import { afterAll, beforeAll, describe, expect, test } from "vitest";

import { buildRequest, initialScene, setEps, setGoal, setStart, summarize } from "../src/scene.js";
import type { PlanResponse } from "../src/types.js";

const execFileP = promisify(execFile);
const PY = process.env.POLYPLAN_PYTHON ?? "python3";
const PORT = 18750 + Math.floor(Math.random() * 200);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let workdir: string;

async function waitForHealth(tries = 100): Promise<void> {
  for (let i = 0; i < tries; i++) {
    try {
      const r = await fetch(`${BASE}/health`);
      if (r.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((res) => setTimeout(res, 200));
  }
  throw new Error("service did not come up");
}

async function servicePlan(req: unknown): Promise<PlanResponse> {
  const r = await fetch(`${BASE}/plan`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(req),
  });
  expect(r.ok).toBe(true);
  return (await r.json()) as PlanResponse;
}

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "workbench-"));
  server = spawn(PY, ["-m", "polyplan.cli", "--serve", String(PORT)], {
    stdio: "ignore",
  });
  await waitForHealth();
}, 120_000);

afterAll(() => {
  server?.kill();
  rmSync(workdir, { recursive: true, force: true });
});

describe("UI request replayed through the CLI", () => {
  test("identical verdict and path length", async () => {
    let scene = initialScene(); // gateway + l_shape
    scene = setStart(scene, { x: 70, y: 100, theta_deg: 340 });
    scene = setGoal(scene, { x: 458, y: 119, theta_deg: 270 });
    scene = setEps(scene, 4);
    const req = buildRequest(scene, false);
    const fromService = await servicePlan(req);

    const jsonOut = join(workdir, "cli.json");
    const args = [
      "-m", "polyplan.cli",
      "--env", String(req.env),
      "--robot", String(req.robot),
      "--start", `${req.start.x},${req.start.y},${req.start.theta_deg}`,
      "--goal", `${req.goal.x},${req.goal.y},${req.goal.theta_deg}`,
      "--eps", String(req.eps),
      "--strategy", req.strategy!,
      "--seed", String(req.seed),
      "--json", jsonOut,
    ];
    const { stdout } = await execFileP(PY, args);
    expect(stdout).toContain("PATH");
    const fromCli = JSON.parse(readFileSync(jsonOut, "utf-8")) as PlanResponse;

    expect(fromCli.status).toBe(fromService.status);
    expect(fromCli.path!.length).toBe(fromService.path!.length); // ±0 boxes
    expect(fromCli.stats.boxes_created).toBe(fromService.stats.boxes_created);
  }, 120_000);

  test("eps slider flip renders both verdicts on the tuned gap", async () => {
    // gateway with the calibrated gap: eps=2 passes, eps=4 does not
    const tunedEnv = {
      name: "gateway-tuned",
      bbox: [0, 0, 512, 512] as [number, number, number, number],
      obstacles: [
        [[240, 0], [268, 0], [268, 229], [240, 229]],
        [[240, 283], [268, 283], [268, 512], [240, 512]],
      ],
    };
    let scene = initialScene();
    scene = { ...scene, env: tunedEnv, envName: "inline" };
    scene = setStart(scene, { x: 70, y: 100, theta_deg: 340 });
    scene = setGoal(scene, { x: 458, y: 119, theta_deg: 270 });

    scene = setEps(scene, 2);
    const fine = await servicePlan({ ...buildRequest(scene, false), env: tunedEnv });
    scene = setEps(scene, 4);
    const coarse = await servicePlan({ ...buildRequest(scene, false), env: tunedEnv });

    expect(fine.status).toBe("PATH");
    expect(coarse.status).toBe("NO_PATH");
    const bannerFine = summarize(fine);
    const bannerCoarse = summarize(coarse);
    expect(bannerFine.kind).toBe("path");
    expect(bannerCoarse.kind).toBe("no-path");
  }, 240_000);
});
