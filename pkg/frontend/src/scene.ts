// Scene state and request building: everything here is pure and DOM-free so
// the request a user assembles in the UI can be unit-tested and replayed
// byte-for-byte through other clients.

import type { EnvironmentData, PlanRequest, PlanResponse, Pose, Strategy } from "./types.js";

export interface Scene {
  envName: string;
  env: EnvironmentData | null; // geometry of the selected environment
  robotName: string;
  start: Pose;
  goal: Pose;
  eps: number;
  strategy: Strategy;
  seed: number;
}

export const DEFAULT_BBOX: [number, number, number, number] = [0, 0, 512, 512];

export function bbox(scene: Scene): [number, number, number, number] {
  return scene.env?.bbox ?? DEFAULT_BBOX;
}

export function clampPose(pose: Pose, box: [number, number, number, number]): Pose {
  return {
    x: Math.min(Math.max(pose.x, box[0]), box[2]),
    y: Math.min(Math.max(pose.y, box[1]), box[3]),
    theta_deg: ((pose.theta_deg % 360) + 360) % 360,
  };
}

export function setStart(scene: Scene, pose: Pose): Scene {
  return { ...scene, start: clampPose(pose, bbox(scene)) };
}

export function setGoal(scene: Scene, pose: Pose): Scene {
  return { ...scene, goal: clampPose(pose, bbox(scene)) };
}

export function setEps(scene: Scene, eps: number): Scene {
  return { ...scene, eps: eps > 0 && Number.isFinite(eps) ? eps : scene.eps };
}

/** Point-in-polygon by ray parity; the obstacle boundary counts as inside. */
export function pointInPolygon(px: number, py: number, poly: number[][]): boolean {
  let inside = false;
  const n = poly.length;
  for (let i = 0; i < n; i++) {
    const [xi, yi] = poly[i];
    const [xj, yj] = poly[(i + 1) % n];
    // boundary tolerance: distance to the segment
    const dx = xj - xi;
    const dy = yj - yi;
    const qq = dx * dx + dy * dy;
    const t = qq > 0 ? Math.min(1, Math.max(0, ((px - xi) * dx + (py - yi) * dy) / qq)) : 0;
    const ddx = px - xi - t * dx;
    const ddy = py - yi - t * dy;
    if (Math.hypot(ddx, ddy) <= 1e-9) return true;
    if (yi > py !== yj > py) {
      const xc = xi + ((py - yi) / (yj - yi)) * (xj - xi);
      if (xc > px) inside = !inside;
    }
  }
  return inside;
}

/** Inline validation before submission; null when the scene is runnable. */
export function validate(scene: Scene): string | null {
  if (!(scene.eps > 0)) return "eps must be positive";
  const box = bbox(scene);
  for (const [label, pose] of [["start", scene.start], ["goal", scene.goal]] as const) {
    if (pose.x < box[0] || pose.x > box[2] || pose.y < box[1] || pose.y > box[3]) {
      return `${label} is outside the workspace`;
    }
    if (scene.env) {
      for (const poly of scene.env.obstacles) {
        if (pointInPolygon(pose.x, pose.y, poly)) {
          return `${label} reference point is inside an obstacle`;
        }
      }
    }
  }
  return null;
}

export function buildRequest(scene: Scene, includeBoxes = true, boxCap = 50000): PlanRequest {
  return {
    env: scene.envName,
    robot: scene.robotName,
    start: { ...scene.start },
    goal: { ...scene.goal },
    eps: scene.eps,
    strategy: scene.strategy,
    seed: scene.seed,
    include_boxes: includeBoxes,
    box_cap: boxCap,
  };
}

export interface Banner {
  kind: "path" | "no-path" | "error";
  text: string;
}

/** View-model of the verdict banner for a finished run (or a failure). */
export function summarize(result: PlanResponse): Banner {
  if (result.status === "PATH") {
    const n = result.path?.length ?? 0;
    return {
      kind: "path",
      text: `path found: ${n} configurations, ${result.stats.boxes_created} boxes, ` +
        `${Number(result.stats.wall_time).toFixed(2)}s`,
    };
  }
  const why = result.detail && result.detail !== "exhausted" ? ` (${result.detail})` : "";
  return {
    kind: "no-path",
    text: `NO PATH at eps=${result.stats.eps}${why}: ` +
      `${result.stats.boxes_created} boxes examined`,
  };
}

export function initialScene(): Scene {
  return {
    envName: "gateway",
    env: null,
    robotName: "l_shape",
    start: { x: 70, y: 100, theta_deg: 340 },
    goal: { x: 458, y: 119, theta_deg: 270 },
    eps: 4,
    strategy: "balanced",
    seed: 0,
  };
}
