// Path playback: arc-length parameterization over the returned
// configuration sequence, with shortest-arc angle interpolation.

import type { Pose } from "./types.js";

export function shortestArcDeg(from: number, to: number): number {
  let d = (to - from) % 360;
  if (d > 180) d -= 360;
  if (d < -180) d += 360;
  return d;
}

export function pathLength(path: Pose[], angleWeight = 0.5): number {
  let total = 0;
  for (let i = 1; i < path.length; i++) {
    total += segmentCost(path[i - 1], path[i], angleWeight);
  }
  return total;
}

function segmentCost(a: Pose, b: Pose, angleWeight: number): number {
  const dxy = Math.hypot(b.x - a.x, b.y - a.y);
  const dth = Math.abs(shortestArcDeg(a.theta_deg, b.theta_deg));
  return dxy + angleWeight * dth;
}

/** Pose at fraction u in [0, 1] of the path's total travel cost. */
export function poseAt(path: Pose[], u: number, angleWeight = 0.5): Pose {
  if (path.length === 0) return { x: 0, y: 0, theta_deg: 0 };
  if (path.length === 1 || u <= 0) return { ...path[0] };
  const total = pathLength(path, angleWeight);
  if (u >= 1 || total === 0) return { ...path[path.length - 1] };
  let remaining = u * total;
  for (let i = 1; i < path.length; i++) {
    const cost = segmentCost(path[i - 1], path[i], angleWeight);
    if (cost >= remaining && cost > 0) {
      const t = remaining / cost;
      const a = path[i - 1];
      const b = path[i];
      return {
        x: a.x + t * (b.x - a.x),
        y: a.y + t * (b.y - a.y),
        theta_deg: a.theta_deg + t * shortestArcDeg(a.theta_deg, b.theta_deg),
      };
    }
    remaining -= cost;
  }
  return { ...path[path.length - 1] };
}
