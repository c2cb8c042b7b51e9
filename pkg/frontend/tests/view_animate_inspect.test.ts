import { describe, expect, test } from "vitest";

import { pathLength, poseAt, shortestArcDeg } from "../src/animate.js";
import { boxAt, describeBox } from "../src/inspect.js";
import { fitViewport, toCanvas, toWorld } from "../src/view.js";
import type { LeafBox } from "../src/types.js";

describe("viewport", () => {
  const v = fitViewport([0, 0, 512, 512], 768, 768);

  test("world-canvas round trip", () => {
    for (const [x, y] of [[0, 0], [512, 512], [100, 350.5]]) {
      const [cx, cy] = toCanvas(v, x, y);
      const [wx, wy] = toWorld(v, cx, cy);
      expect(wx).toBeCloseTo(x, 9);
      expect(wy).toBeCloseTo(y, 9);
    }
  });

  test("y axis flips", () => {
    expect(toCanvas(v, 0, 0)[1]).toBe(768);
    expect(toCanvas(v, 0, 512)[1]).toBe(0);
  });
});

describe("animation", () => {
  test("shortest arc wraps", () => {
    expect(shortestArcDeg(350, 10)).toBe(20);
    expect(shortestArcDeg(10, 350)).toBe(-20);
  });

  test("endpoints and midpoint", () => {
    const path = [
      { x: 0, y: 0, theta_deg: 0 },
      { x: 10, y: 0, theta_deg: 0 },
      { x: 10, y: 10, theta_deg: 90 },
    ];
    expect(poseAt(path, 0)).toEqual(path[0]);
    expect(poseAt(path, 1)).toEqual(path[2]);
    const total = pathLength(path);
    const mid = poseAt(path, 10 / total); // after the first straight leg
    expect(mid.x).toBeCloseTo(10, 6);
    expect(mid.y).toBeCloseTo(0, 6);
  });
});

describe("box inspection", () => {
  const boxes: LeafBox[] = [
    { x0: 0, y0: 0, x1: 64, y1: 64, theta_lo_deg: 0, theta_hi_deg: 360, class: "FREE", feature_counts: [0] },
    { x0: 0, y0: 0, x1: 32, y1: 32, theta_lo_deg: 0, theta_hi_deg: 90, class: "MIXED", feature_counts: [2, 0, 3] },
  ];

  test("click hits the most refined box", () => {
    const hit = boxAt(boxes, 10, 10);
    expect(hit?.class).toBe("MIXED");
  });

  test("click outside the tree is a no-op", () => {
    expect(boxAt(boxes, 100, 100)).toBeNull();
  });

  test("free leaf reports zero features, mixed reports per-triangle counts", () => {
    const free = describeBox(boxes[0]);
    expect(free.featureTotal).toBe(0);
    const mixed = describeBox(boxes[1]);
    expect(mixed.featureTotal).toBe(5);
    expect(mixed.perTriangle).toEqual([2, 0, 3]);
  });
});
