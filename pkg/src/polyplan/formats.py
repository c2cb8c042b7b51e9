"""JSON file formats for environments, robots, plan requests and responses.

Angles cross the file/API boundary in degrees and are converted to radians
internally.  Environment and robot files may be referenced by bundled
fixture name instead of a path everywhere a file is accepted.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import fixtures
from .decompose import RobotPolygon
from .engine import PlanResult
from .predicates import Environment


class FormatError(ValueError):
    """Parse or validation failure, with a field-path context."""


def _fail(ctx: str, msg: str):
    raise FormatError(f"{ctx}: {msg}")


def _load_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise FormatError(f"{path}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None


def _point_list(raw, ctx: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) < 3:
        _fail(ctx, "expected a list of at least 3 [x, y] points")
    pts = []
    for i, p in enumerate(raw):
        if not (isinstance(p, (list, tuple)) and len(p) == 2):
            _fail(f"{ctx}[{i}]", "expected [x, y]")
        try:
            x, y = float(p[0]), float(p[1])
        except (TypeError, ValueError):
            _fail(f"{ctx}[{i}]", "coordinates must be numbers")
        if not (math.isfinite(x) and math.isfinite(y)):
            _fail(f"{ctx}[{i}]", "coordinates must be finite")
        pts.append((x, y))
    return np.asarray(pts)


# ---------------------------------------------------------------------------
# environments
# ---------------------------------------------------------------------------


def environment_from_dict(data: dict, ctx: str = "environment") -> Environment:
    if not isinstance(data, dict):
        _fail(ctx, "expected an object")
    bbox = data.get("bbox", [0.0, 0.0, 512.0, 512.0])
    if not (isinstance(bbox, list) and len(bbox) == 4):
        _fail(f"{ctx}.bbox", "expected [x0, y0, x1, y1]")
    x0, y0, x1, y1 = map(float, bbox)
    if not (x1 > x0 and y1 > y0):
        _fail(f"{ctx}.bbox", "bbox must have positive extent")
    raw_obs = data.get("obstacles", [])
    if not isinstance(raw_obs, list):
        _fail(f"{ctx}.obstacles", "expected a list of polygons")
    obstacles = [_point_list(o, f"{ctx}.obstacles[{i}]") for i, o in enumerate(raw_obs)]
    try:
        return Environment(obstacles, bbox=(x0, y0, x1, y1), name=str(data.get("name", "env")))
    except ValueError as e:
        _fail(f"{ctx}.obstacles", str(e))


def environment_to_dict(env: Environment) -> dict:
    return {
        "name": env.name,
        "bbox": list(env.bbox),
        "obstacles": [np.asarray(o).tolist() for o in env.obstacles],
    }


def load_environment(ref: str) -> Environment:
    """Load from a JSON file path, or a bundled fixture name."""
    if ref in fixtures.ENVIRONMENTS:
        return fixtures.named_environment(ref)
    return environment_from_dict(_load_json(ref), ctx=str(ref))


# ---------------------------------------------------------------------------
# robots
# ---------------------------------------------------------------------------


def robot_from_dict(data: dict, ctx: str = "robot") -> RobotPolygon:
    if not isinstance(data, dict):
        _fail(ctx, "expected an object")
    verts = _point_list(data.get("vertices"), f"{ctx}.vertices")
    origin = data.get("origin")
    if origin is None:
        origin = verts.mean(axis=0).tolist()
    if not (isinstance(origin, list) and len(origin) == 2):
        _fail(f"{ctx}.origin", "expected [x, y]")
    kind = data.get("kind", "auto")
    try:
        return RobotPolygon(
            verts,
            origin=(float(origin[0]), float(origin[1])),
            kind=str(kind),
            name=str(data.get("name", "robot")),
        )
    except ValueError as e:
        _fail(ctx, str(e))


def robot_to_dict(robot: RobotPolygon) -> dict:
    return {
        "name": robot.name,
        "vertices": robot.vertices.tolist(),
        "origin": list(robot.origin),
        "kind": robot.kind,
    }


def load_robot(ref: str) -> RobotPolygon:
    if ref in fixtures.ROBOTS:
        return fixtures.named_robot(ref)
    return robot_from_dict(_load_json(ref), ctx=str(ref))


# ---------------------------------------------------------------------------
# plan requests / responses
# ---------------------------------------------------------------------------

STRATEGIES = ("balanced", "greedy", "bfs", "dfs", "random")
DEFAULT_BOX_CAP = 50000


def _pose_from(raw, ctx: str) -> tuple[float, float, float]:
    if isinstance(raw, dict):
        try:
            x, y, t = float(raw["x"]), float(raw["y"]), float(raw.get("theta_deg", 0.0))
        except (KeyError, TypeError, ValueError):
            _fail(ctx, 'expected {"x", "y", "theta_deg"}')
    elif isinstance(raw, (list, tuple)) and len(raw) == 3:
        x, y, t = (float(v) for v in raw)
    else:
        _fail(ctx, "expected a pose object or [x, y, theta_deg]")
    return (x, y, math.radians(t))


def parse_request(data: dict):
    """Validate a plan request; returns a kwargs dict for the planner."""
    if not isinstance(data, dict):
        raise FormatError("request: expected a JSON object")
    raw_env = data.get("env")
    if isinstance(raw_env, str):
        env = load_environment(raw_env)
    elif isinstance(raw_env, dict):
        env = environment_from_dict(raw_env, "request.env")
    else:
        _fail("request.env", "expected a fixture name or inline environment")
    raw_rob = data.get("robot")
    if isinstance(raw_rob, str):
        robot = load_robot(raw_rob)
    elif isinstance(raw_rob, dict):
        robot = robot_from_dict(raw_rob, "request.robot")
    else:
        _fail("request.robot", "expected a fixture name or inline robot")
    if "start" not in data or "goal" not in data:
        _fail("request", "start and goal poses are required")
    alpha = _pose_from(data["start"], "request.start")
    beta = _pose_from(data["goal"], "request.goal")
    try:
        eps = float(data.get("eps", 0.0))
    except (TypeError, ValueError):
        _fail("request.eps", "must be a number")
    if not (eps > 0.0 and math.isfinite(eps)):
        _fail("request.eps", "must be a positive number")
    strategy = data.get("strategy", "balanced")
    if strategy not in STRATEGIES:
        _fail("request.strategy", f"must be one of {list(STRATEGIES)}")
    try:
        seed = int(data.get("seed", 0))
    except (TypeError, ValueError):
        _fail("request.seed", "must be an integer")
    include_boxes = bool(data.get("include_boxes", False))
    box_cap = int(data.get("box_cap", DEFAULT_BOX_CAP))
    return {
        "env": env,
        "robot": robot,
        "alpha": alpha,
        "beta": beta,
        "eps": eps,
        "strategy": strategy,
        "seed": seed,
        "include_boxes": include_boxes,
        "box_cap": box_cap,
    }


def result_to_dict(result: PlanResult, box_cap: int = DEFAULT_BOX_CAP) -> dict:
    out = {
        "status": result.status,
        "detail": result.detail,
        "stats": result.stats,
        "path": None,
    }
    if result.path is not None:
        out["path"] = [
            {"x": x, "y": y, "theta_deg": math.degrees(t) % 360.0} for (x, y, t) in result.path
        ]
    if result.leaves is not None:
        leaves = result.leaves[:box_cap]
        out["boxes"] = [
            {
                "x0": b[0], "y0": b[1], "x1": b[2], "y1": b[3],
                "theta_lo_deg": math.degrees(b[4]),
                "theta_hi_deg": math.degrees(b[5]),
                "class": b[6],
                "feature_counts": list(b[7]) if len(b) > 7 else [],
            }
            for b in leaves
        ]
        out["boxes_truncated"] = len(result.leaves) > box_cap
    return out
