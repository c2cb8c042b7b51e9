// Mirrors of the planning service JSON schema (schemas/ in the repo root).
// Angles cross the wire in degrees.

export interface Pose {
  x: number;
  y: number;
  theta_deg: number;
}

export interface EnvironmentData {
  name?: string;
  bbox?: [number, number, number, number];
  obstacles: number[][][];
}

export interface RobotData {
  name?: string;
  vertices: number[][];
  origin?: [number, number];
  kind?: "auto" | "star" | "general";
}

export type Strategy = "balanced" | "greedy" | "bfs" | "dfs" | "random";

export interface PlanRequest {
  env: string | EnvironmentData;
  robot: string | RobotData;
  start: Pose;
  goal: Pose;
  eps: number;
  strategy?: Strategy;
  seed?: number;
  include_boxes?: boolean;
  box_cap?: number;
}

export interface LeafBox {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
  theta_lo_deg: number;
  theta_hi_deg: number;
  class: "FREE" | "STUCK" | "MIXED";
  feature_counts: number[];
}

export interface PlanStats {
  eps: number;
  r0: number;
  triangles: number;
  strategy: string;
  boxes_created: number;
  boxes_popped: number;
  free_leaves: number;
  stuck_leaves: number;
  mixed_discarded: number;
  wall_time: number;
  [key: string]: number | string;
}

export interface PlanResponse {
  status: "PATH" | "NO_PATH";
  detail: string;
  path: Pose[] | null;
  stats: PlanStats;
  boxes?: LeafBox[];
  boxes_truncated?: boolean;
}
