// Workbench entry point: DOM wiring around the pure scene/render modules.

import { PlannerClient, ServiceError } from "./api.js";
import { poseAt } from "./animate.js";
import { boxAt, describeBox } from "./inspect.js";
import {
  drawBoxes,
  drawEnvironment,
  drawMarker,
  drawPath,
  drawRobot,
} from "./render.js";
import {
  Scene,
  bbox,
  buildRequest,
  initialScene,
  setEps,
  setGoal,
  setStart,
  summarize,
  validate,
} from "./scene.js";
import type { EnvironmentData, PlanResponse, Pose, RobotData } from "./types.js";
import { Viewport, fitViewport, toCanvas, toWorld } from "./view.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
};

const canvas = $<HTMLCanvasElement>("stage");
const ctx = canvas.getContext("2d")!;
const envSel = $<HTMLSelectElement>("env");
const robotSel = $<HTMLSelectElement>("robot");
const epsInput = $<HTMLInputElement>("eps");
const epsSlider = $<HTMLInputElement>("epsSlider");
const strategySel = $<HTMLSelectElement>("strategy");
const runBtn = $<HTMLButtonElement>("run");
const banner = $<HTMLDivElement>("banner");
const statsDiv = $<HTMLDivElement>("stats");
const inspectDiv = $<HTMLDivElement>("inspect");
const poseTable = $<HTMLDivElement>("poses");
const dialStart = $<HTMLCanvasElement>("dialStart");
const dialGoal = $<HTMLCanvasElement>("dialGoal");
const truncatedBadge = $<HTMLSpanElement>("truncated");

const client = new PlannerClient(
  new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:8080",
);

let scene: Scene = initialScene();
let envGeom: EnvironmentData | null = null;
let robotGeom: RobotData | null = null;
let result: PlanResponse | null = null;
let viewport: Viewport = fitViewport([0, 0, 512, 512], canvas.width, canvas.height);
let runCounter = 0; // stale-render cancellation: only the newest run draws
let animStart = 0;
let dragging: "start" | "goal" | null = null;

function redraw(animPose: Pose | null = null) {
  if (envGeom) drawEnvironment(ctx, viewport, envGeom);
  else {
    ctx.fillStyle = "#fff";
    ctx.fillRect(0, 0, canvas.width, canvas.height);
  }
  if (result?.boxes) drawBoxes(ctx, viewport, result.boxes);
  if (envGeom) drawEnvironment2(); // obstacles on top of the leaf wash
  if (result?.path) drawPath(ctx, viewport, result.path);
  if (robotGeom) {
    drawRobot(ctx, viewport, robotGeom, scene.start, { stroke: "#2060b0" });
    drawRobot(ctx, viewport, robotGeom, scene.goal, { stroke: "#108040" });
    if (animPose) {
      drawRobot(ctx, viewport, robotGeom, animPose, {
        stroke: "#b03030",
        fill: "rgba(176,48,48,0.15)",
      });
    }
  }
  drawMarker(ctx, viewport, scene.start, "#2060b0", "start");
  drawMarker(ctx, viewport, scene.goal, "#108040", "goal");
  drawDial(dialStart, scene.start.theta_deg, "#2060b0");
  drawDial(dialGoal, scene.goal.theta_deg, "#108040");
  poseTable.textContent =
    `start (${scene.start.x.toFixed(0)}, ${scene.start.y.toFixed(0)}, ${scene.start.theta_deg.toFixed(0)}°)  ` +
    `goal (${scene.goal.x.toFixed(0)}, ${scene.goal.y.toFixed(0)}, ${scene.goal.theta_deg.toFixed(0)}°)`;
}

function drawEnvironment2() {
  // obstacle outlines drawn again, un-washed, for contrast over leaf boxes
  if (!envGeom) return;
  ctx.fillStyle = "rgba(71,71,84,0.9)";
  for (const poly of envGeom.obstacles) {
    ctx.beginPath();
    poly.forEach(([x, y], i) => {
      const [cx, cy] = toCanvas(viewport, x, y);
      i === 0 ? ctx.moveTo(cx, cy) : ctx.lineTo(cx, cy);
    });
    ctx.closePath();
    ctx.fill();
  }
}

function drawDial(el: HTMLCanvasElement, deg: number, color: string) {
  const g = el.getContext("2d")!;
  const r = el.width / 2 - 3;
  g.clearRect(0, 0, el.width, el.height);
  g.beginPath();
  g.arc(el.width / 2, el.height / 2, r, 0, 2 * Math.PI);
  g.strokeStyle = "#999";
  g.stroke();
  const t = (deg * Math.PI) / 180;
  g.beginPath();
  g.moveTo(el.width / 2, el.height / 2);
  g.lineTo(el.width / 2 + r * Math.cos(t), el.height / 2 - r * Math.sin(t));
  g.strokeStyle = color;
  g.lineWidth = 2;
  g.stroke();
  g.lineWidth = 1;
}

function setBanner(kind: "path" | "no-path" | "error" | "info", text: string) {
  banner.className = `banner ${kind}`;
  banner.textContent = text;
}

function animate(run: number) {
  if (run !== runCounter || !result?.path) return;
  const elapsed = (performance.now() - animStart) / 1000;
  const u = (elapsed % 6) / 6;
  redraw(poseAt(result.path, u));
  requestAnimationFrame(() => animate(run));
}

async function runPlan() {
  const problem = validate(scene);
  if (problem) {
    setBanner("error", problem);
    return;
  }
  const run = ++runCounter;
  runBtn.disabled = true;
  setBanner("info", "planning…");
  try {
    const resp = await client.plan(buildRequest(scene));
    if (run !== runCounter) return; // a newer run superseded this one
    result = resp;
    truncatedBadge.style.display = resp.boxes_truncated ? "inline" : "none";
    const b = summarize(resp);
    setBanner(b.kind, b.text);
    statsDiv.textContent = JSON.stringify(resp.stats, null, 1);
    if (resp.status === "PATH" && resp.path) {
      animStart = performance.now();
      animate(run);
    } else {
      redraw();
    }
  } catch (e) {
    if (run === runCounter) {
      setBanner("error", e instanceof ServiceError ? e.message : String(e));
      redraw(); // scene preserved on failure
    }
  } finally {
    if (run === runCounter) runBtn.disabled = false;
  }
}

async function switchEnvironment(name: string) {
  scene = { ...scene, envName: name };
  try {
    envGeom = await client.environmentGeometry(name);
    scene = { ...scene, env: envGeom };
    viewport = fitViewport(bbox(scene), canvas.width, canvas.height);
  } catch {
    envGeom = null; // render-only loss; planning still works by name
  }
  result = null;
  redraw();
}

async function switchRobot(name: string) {
  scene = { ...scene, robotName: name };
  try {
    robotGeom = await client.robotGeometry(name);
  } catch {
    robotGeom = null;
  }
  result = null;
  redraw();
}

function canvasPose(ev: MouseEvent): [number, number] {
  const rect = canvas.getBoundingClientRect();
  return toWorld(viewport, ev.clientX - rect.left, ev.clientY - rect.top);
}

canvas.addEventListener("mousedown", (ev) => {
  const [wx, wy] = canvasPose(ev);
  const near = (p: Pose) => Math.hypot(p.x - wx, p.y - wy) * viewport.scale < 12;
  dragging = near(scene.start) ? "start" : near(scene.goal) ? "goal" : null;
});

canvas.addEventListener("mousemove", (ev) => {
  if (!dragging) return;
  const [wx, wy] = canvasPose(ev);
  const pose = dragging === "start" ? scene.start : scene.goal;
  const next = { ...pose, x: wx, y: wy };
  scene = dragging === "start" ? setStart(scene, next) : setGoal(scene, next);
  const problem = validate(scene);
  if (problem) setBanner("error", problem);
  else if (banner.classList.contains("error")) setBanner("info", "ready");
  redraw();
});

canvas.addEventListener("mouseup", () => (dragging = null));

canvas.addEventListener("click", (ev) => {
  if (!result?.boxes) return;
  const [wx, wy] = canvasPose(ev);
  const box = boxAt(result.boxes, wx, wy);
  if (!box) {
    inspectDiv.textContent = "";
    return;
  }
  const d = describeBox(box);
  inspectDiv.innerHTML =
    `<b>${d.cls}</b> box<br>xy: ${d.bounds}<br>θ: ${d.angular}<br>` +
    `features: ${d.featureTotal}` +
    (d.perTriangle.length > 1 ? `<br>per triangle: [${d.perTriangle.join(", ")}]` : "");
});

function wireDial(el: HTMLCanvasElement, which: "start" | "goal") {
  const set = (ev: MouseEvent) => {
    const rect = el.getBoundingClientRect();
    const dx = ev.clientX - rect.left - el.width / 2;
    const dy = el.height / 2 - (ev.clientY - rect.top);
    const deg = ((Math.atan2(dy, dx) * 180) / Math.PI + 360) % 360;
    const pose = which === "start" ? scene.start : scene.goal;
    const next = { ...pose, theta_deg: deg };
    scene = which === "start" ? setStart(scene, next) : setGoal(scene, next);
    redraw();
  };
  let down = false;
  el.addEventListener("mousedown", (e) => {
    down = true;
    set(e);
  });
  el.addEventListener("mousemove", (e) => down && set(e));
  window.addEventListener("mouseup", () => (down = false));
}

async function boot() {
  try {
    const [envs, robots] = await Promise.all([client.environments(), client.robots()]);
    envSel.innerHTML = envs.map((n) => `<option>${n}</option>`).join("");
    robotSel.innerHTML = robots.map((n) => `<option>${n}</option>`).join("");
    envSel.value = scene.envName;
    robotSel.value = scene.robotName;
    setBanner("info", "ready");
  } catch (e) {
    setBanner("error", e instanceof ServiceError ? e.message : String(e));
  }
  envSel.addEventListener("change", () => switchEnvironment(envSel.value));
  robotSel.addEventListener("change", () => switchRobot(robotSel.value));
  const syncEps = (v: number) => {
    scene = setEps(scene, v);
    epsInput.value = String(scene.eps);
    epsSlider.value = String(scene.eps);
  };
  epsInput.addEventListener("change", () => syncEps(Number(epsInput.value)));
  epsSlider.addEventListener("input", () => syncEps(Number(epsSlider.value)));
  strategySel.addEventListener("change", () => {
    scene = { ...scene, strategy: strategySel.value as Scene["strategy"] };
  });
  runBtn.addEventListener("click", runPlan);
  wireDial(dialStart, "start");
  wireDial(dialGoal, "goal");
  await switchEnvironment(scene.envName);
  await switchRobot(scene.robotName);
}

boot();
