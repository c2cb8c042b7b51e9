"""Deterministic SVG rendering of a planning result."""

from __future__ import annotations

import math
from pathlib import Path

from .decompose import RobotPolygon
from .engine import PlanResult
from .predicates import Environment

CLASS_FILL = {"FREE": "#bfe8bf", "STUCK": "#e8a0a0", "MIXED": "#efe6b0"}


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_svg(result: PlanResult, env: Environment, robot: RobotPolygon, path: str) -> None:
    """Draw obstacles, leaf boxes colored by class, the path polyline and the
    robot footprint at each path pose.  Output is byte-stable for identical
    inputs."""
    x0, y0, x1, y1 = env.bbox
    w = x1 - x0
    h = y1 - y0

    def pt(x, y):
        # world y up, svg y down
        return f"{_fmt(x - x0)},{_fmt(y1 - y)}"

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
        f'<rect x="0" y="0" width="{_fmt(w)}" height="{_fmt(h)}" fill="#ffffff"/>',
    ]
    if result.leaves:
        order = {"FREE": 0, "STUCK": 1, "MIXED": 2}
        for b in sorted(result.leaves, key=lambda b: (order.get(b[6], 3), b[0], b[1], b[4])):
            bx0, by0, bx1, by1, cls = b[0], b[1], b[2], b[3], b[6]
            fill = CLASS_FILL.get(cls, "#dddddd")
            lines.append(
                f'<rect x="{_fmt(bx0 - x0)}" y="{_fmt(y1 - by1)}" width="{_fmt(bx1 - bx0)}" '
                f'height="{_fmt(by1 - by0)}" fill="{fill}" fill-opacity="0.45" '
                f'stroke="#999999" stroke-width="0.2"/>'
            )
    for ob in env.obstacles:
        pts = " ".join(pt(x, y) for x, y in ob)
        lines.append(f'<polygon points="{pts}" fill="#4a4a55" stroke="#222222" stroke-width="0.8"/>')
    if result.path:
        for cfg in result.path:
            fp = robot_footprint(robot, cfg)
            pts = " ".join(pt(x, y) for x, y in fp)
            lines.append(
                f'<polygon points="{pts}" fill="none" stroke="#3a6ea5" stroke-width="0.6" '
                f'stroke-opacity="0.7"/>'
            )
        poly = " ".join(pt(x, y) for x, y, _ in result.path)
        lines.append(
            f'<polyline points="{poly}" fill="none" stroke="#b03030" stroke-width="1.6"/>'
        )
    lines.append("</svg>")
    Path(path).write_text("\n".join(lines) + "\n")


def robot_footprint(robot: RobotPolygon, cfg) -> list[tuple[float, float]]:
    x, y, t = cfg
    c = math.cos(t)
    s = math.sin(t)
    out = []
    for vx, vy in robot.local_vertices():
        out.append((x + c * vx - s * vy, y + s * vx + c * vy))
    return out
