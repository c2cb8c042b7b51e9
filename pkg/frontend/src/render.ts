// Canvas drawing of environment, subdivision leaves, path and robot.

import type { EnvironmentData, LeafBox, Pose, RobotData } from "./types.js";
import { Viewport, toCanvas } from "./view.js";

export const CLASS_COLORS: Record<LeafBox["class"], string> = {
  FREE: "rgba(96, 190, 96, 0.35)",
  STUCK: "rgba(220, 90, 90, 0.40)",
  MIXED: "rgba(235, 210, 90, 0.30)",
};

export function drawEnvironment(ctx: CanvasRenderingContext2D, v: Viewport, env: EnvironmentData) {
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, v.width, v.height);
  ctx.fillStyle = "#474754";
  ctx.strokeStyle = "#20202a";
  for (const poly of env.obstacles) {
    ctx.beginPath();
    poly.forEach(([x, y], i) => {
      const [cx, cy] = toCanvas(v, x, y);
      i === 0 ? ctx.moveTo(cx, cy) : ctx.lineTo(cx, cy);
    });
    ctx.closePath();
    ctx.fill();
    ctx.stroke();
  }
}

export function drawBoxes(ctx: CanvasRenderingContext2D, v: Viewport, boxes: LeafBox[]) {
  for (const b of boxes) {
    const [x0, y1] = toCanvas(v, b.x0, b.y0);
    const [x1, y0] = toCanvas(v, b.x1, b.y1);
    ctx.fillStyle = CLASS_COLORS[b.class];
    ctx.fillRect(x0, y0, x1 - x0, y1 - y0);
    ctx.strokeStyle = "rgba(90,90,90,0.25)";
    ctx.strokeRect(x0, y0, x1 - x0, y1 - y0);
  }
}

export function drawPath(ctx: CanvasRenderingContext2D, v: Viewport, path: Pose[]) {
  if (path.length < 2) return;
  ctx.beginPath();
  path.forEach((p, i) => {
    const [cx, cy] = toCanvas(v, p.x, p.y);
    i === 0 ? ctx.moveTo(cx, cy) : ctx.lineTo(cx, cy);
  });
  ctx.strokeStyle = "#b03030";
  ctx.lineWidth = 2;
  ctx.stroke();
  ctx.lineWidth = 1;
}

export function footprint(robot: RobotData, pose: Pose): number[][] {
  const origin = robot.origin ?? centroid(robot.vertices);
  const t = (pose.theta_deg * Math.PI) / 180;
  const c = Math.cos(t);
  const s = Math.sin(t);
  return robot.vertices.map(([x, y]) => {
    const lx = x - origin[0];
    const ly = y - origin[1];
    return [pose.x + c * lx - s * ly, pose.y + s * lx + c * ly];
  });
}

function centroid(vertices: number[][]): [number, number] {
  let sx = 0;
  let sy = 0;
  for (const [x, y] of vertices) {
    sx += x;
    sy += y;
  }
  return [sx / vertices.length, sy / vertices.length];
}

export function drawRobot(
  ctx: CanvasRenderingContext2D,
  v: Viewport,
  robot: RobotData,
  pose: Pose,
  style: { stroke: string; fill?: string },
) {
  const pts = footprint(robot, pose);
  ctx.beginPath();
  pts.forEach(([x, y], i) => {
    const [cx, cy] = toCanvas(v, x, y);
    i === 0 ? ctx.moveTo(cx, cy) : ctx.lineTo(cx, cy);
  });
  ctx.closePath();
  if (style.fill) {
    ctx.fillStyle = style.fill;
    ctx.fill();
  }
  ctx.strokeStyle = style.stroke;
  ctx.lineWidth = 1.5;
  ctx.stroke();
  ctx.lineWidth = 1;
  // heading tick from the rotation origin
  const [ox, oy] = toCanvas(v, pose.x, pose.y);
  const t = (pose.theta_deg * Math.PI) / 180;
  ctx.beginPath();
  ctx.moveTo(ox, oy);
  ctx.lineTo(ox + 14 * Math.cos(t), oy - 14 * Math.sin(t));
  ctx.strokeStyle = style.stroke;
  ctx.stroke();
}

export function drawMarker(
  ctx: CanvasRenderingContext2D,
  v: Viewport,
  pose: Pose,
  color: string,
  label: string,
) {
  const [cx, cy] = toCanvas(v, pose.x, pose.y);
  ctx.beginPath();
  ctx.arc(cx, cy, 6, 0, 2 * Math.PI);
  ctx.fillStyle = color;
  ctx.fill();
  ctx.font = "12px sans-serif";
  ctx.fillStyle = "#111";
  ctx.fillText(label, cx + 8, cy - 8);
}
