import { describe, expect, test } from "vitest";

import {
  buildRequest,
  clampPose,
  initialScene,
  pointInPolygon,
  setEps,
  setGoal,
  setStart,
  summarize,
  validate,
} from "../src/scene.js";
import type { PlanResponse } from "../src/types.js";

const square = [
  [100, 100],
  [200, 100],
  [200, 200],
  [100, 200],
];

describe("pose clamping", () => {
  test("clamps to the workspace box", () => {
    const p = clampPose({ x: -50, y: 900, theta_deg: 725 }, [0, 0, 512, 512]);
    expect(p).toEqual({ x: 0, y: 512, theta_deg: 5 });
  });

  test("setStart and setGoal clamp", () => {
    let s = initialScene();
    s = setStart(s, { x: 1e6, y: -1, theta_deg: -90 });
    expect(s.start).toEqual({ x: 512, y: 0, theta_deg: 270 });
    s = setGoal(s, { x: 10, y: 10, theta_deg: 360 });
    expect(s.goal.theta_deg).toBe(0);
  });
});

describe("eps control", () => {
  test("rejects nonpositive values", () => {
    let s = initialScene();
    s = setEps(s, 0);
    expect(s.eps).toBe(4);
    s = setEps(s, -3);
    expect(s.eps).toBe(4);
    s = setEps(s, 2.5);
    expect(s.eps).toBe(2.5);
  });
});

describe("point in polygon", () => {
  test("inside, outside, boundary", () => {
    expect(pointInPolygon(150, 150, square)).toBe(true);
    expect(pointInPolygon(50, 50, square)).toBe(false);
    expect(pointInPolygon(100, 150, square)).toBe(true); // boundary counts
  });
});

describe("validation", () => {
  test("goal dragged into an obstacle is reported before submission", () => {
    let s = initialScene();
    s.env = { obstacles: [square], bbox: [0, 0, 512, 512] };
    s = setGoal(s, { x: 150, y: 150, theta_deg: 0 });
    expect(validate(s)).toMatch(/goal .* inside an obstacle/);
    s = setGoal(s, { x: 400, y: 400, theta_deg: 0 });
    expect(validate(s)).toBeNull();
  });
});

describe("request building", () => {
  test("carries the scene verbatim with degrees", () => {
    let s = initialScene();
    s = setStart(s, { x: 70, y: 100, theta_deg: 340 });
    s = setGoal(s, { x: 458, y: 119, theta_deg: 270 });
    s = setEps(s, 2);
    const req = buildRequest(s);
    expect(req).toEqual({
      env: "gateway",
      robot: "l_shape",
      start: { x: 70, y: 100, theta_deg: 340 },
      goal: { x: 458, y: 119, theta_deg: 270 },
      eps: 2,
      strategy: "balanced",
      seed: 0,
      include_boxes: true,
      box_cap: 50000,
    });
  });
});

describe("banner summaries", () => {
  const base = {
    detail: "",
    path: null,
    stats: { eps: 4, boxes_created: 123, wall_time: 0.5 },
  } as unknown as PlanResponse;

  test("path and no-path render distinct banners", () => {
    const yes = summarize({ ...base, status: "PATH", path: [{ x: 0, y: 0, theta_deg: 0 }] });
    const no = summarize({ ...base, status: "NO_PATH" });
    expect(yes.kind).toBe("path");
    expect(no.kind).toBe("no-path");
    expect(no.text).toContain("eps=4");
    expect(yes.text).not.toBe(no.text);
  });
});
