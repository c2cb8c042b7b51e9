"""Bundled robots and environments.

The environment suite is reconstructed in spirit (gateway, sparks, corridor,
corridor-l, corridor-s, maze on a 512x512 stage) with parameterized gap and
corridor widths so tests can control clearance precisely; the robot shapes
cover the star/general decomposition paths and a rotation-center-in-pocket
case (the C shape).
"""

from __future__ import annotations

import math

import numpy as np

from .decompose import RobotPolygon
from .predicates import Environment

WORLD = 512.0


# ---------------------------------------------------------------------------
# robots
# ---------------------------------------------------------------------------


def _centered(verts, name, kind="auto", scale=1.0) -> RobotPolygon:
    v = np.asarray(verts, dtype=np.float64) * scale
    cx, cy = v.mean(axis=0)
    return RobotPolygon(v, origin=(float(cx), float(cy)), kind=kind, name=name)


def l_shape(scale: float = 1.0) -> RobotPolygon:
    """6-gon L; not star-shaped about its centroid, so it exercises the
    general decomposition.  Circumradius about 66 at scale 1."""
    verts = [(0, 0), (60, 0), (60, 20), (20, 20), (20, 80), (0, 80)]
    return _centered(verts, "l_shape", scale=scale)


def snowflake(points: int = 9, r_out: float = 56.0, r_in: float = 26.0) -> RobotPolygon:
    """Star polygon with 2*points vertices, star-shaped about the center."""
    verts = []
    for k in range(2 * points):
        ang = k * math.pi / points
        r = r_out if k % 2 == 0 else r_in
        verts.append((r * math.cos(ang), r * math.sin(ang)))
    return RobotPolygon(np.asarray(verts), origin=(0.0, 0.0), kind="star", name="snowflake")


def s_shape(bar: float = 10.0, scale: float = 1.55) -> RobotPolygon:
    """12-gon blocky S.  bar controls the stroke thickness; the maze fixture
    uses a thin variant."""
    b = float(bar)
    verts = [
        (0, 0), (30, 0), (30, 20 + b), (10, 20 + b), (10, 40), (30, 40),
        (30, 40 + b), (0, 40 + b), (0, 20), (20, 20), (20, b), (0, b),
    ]
    return _centered(verts, "s_shape" if bar >= 8 else "s_shape_thin", scale=scale)


def three_legged() -> RobotPolygon:
    """14-gon tripod with a cross-foot and one chamfered tip."""
    verts = [
        (7.000, 4.041), (7.000, 52.000), (18.000, 52.000), (18.000, 63.000),
        (-18.000, 63.000), (-18.000, 52.000), (-7.000, 52.000), (-7.000, 4.041),
        (-48.533, -19.938), (-41.533, -32.062), (0.000, -8.083),
        (41.533, -32.062), (47.273, -22.120), (41.057, -15.622),
    ]
    return RobotPolygon(np.asarray(verts), origin=(0.0, 9.25), kind="general", name="three_legged")


def c_shape(r_out: float = 52.0, r_in: float = 32.0, mouth_deg: float = 75.0) -> RobotPolygon:
    """18-gon C: a polygonal annulus arc.  The rotation origin sits at the
    annulus center, inside the pocket and outside the robot itself."""
    n = 9
    a0 = math.radians(mouth_deg / 2.0)
    a1 = 2.0 * math.pi - a0
    outer = [
        (r_out * math.cos(a0 + (a1 - a0) * k / (n - 1)), r_out * math.sin(a0 + (a1 - a0) * k / (n - 1)))
        for k in range(n)
    ]
    inner = [
        (r_in * math.cos(a1 - (a1 - a0) * k / (n - 1)), r_in * math.sin(a1 - (a1 - a0) * k / (n - 1)))
        for k in range(n)
    ]
    return RobotPolygon(np.asarray(outer + inner), origin=(0.0, 0.0), kind="general", name="c_shape")


ROBOTS = {
    "l_shape": l_shape,
    "snowflake": snowflake,
    "s_shape": s_shape,
    "s_shape_thin": lambda: s_shape(bar=5.0),
    "three_legged": three_legged,
    "c_shape": c_shape,
}


def named_robot(name: str) -> RobotPolygon:
    try:
        return ROBOTS[name]()
    except KeyError:
        raise KeyError(f"unknown robot fixture: {name!r} (have {sorted(ROBOTS)})") from None


# ---------------------------------------------------------------------------
# environments
# ---------------------------------------------------------------------------


def _rect(x0, y0, x1, y1):
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


def gateway(gap: float = 150.0, wall_x: float = 240.0, wall_w: float = 28.0, gap_y: float = 256.0) -> Environment:
    """Single wall with one gap: two rooms joined by a gateway of width gap."""
    y0 = gap_y - gap / 2.0
    y1 = gap_y + gap / 2.0
    obstacles = [
        _rect(wall_x, 0.0, wall_x + wall_w, y0),
        _rect(wall_x, y1, wall_x + wall_w, WORLD),
    ]
    return Environment(obstacles, name=f"gateway(gap={gap:g})")


def sparks() -> Environment:
    """Scattered convex obstacles in the middle of the stage."""
    obstacles = [
        [(150, 150), (200, 140), (210, 190), (160, 205)],
        [(300, 120), (345, 135), (330, 180)],
        [(230, 260), (280, 250), (295, 295), (250, 315), (215, 295)],
        [(370, 240), (420, 250), (410, 300), (365, 290)],
        [(150, 340), (200, 330), (215, 380), (165, 395)],
        [(300, 380), (350, 370), (360, 420), (310, 430)],
    ]
    return Environment(obstacles, name="sparks")


def corridor(width: float = 128.0, open_bottom: bool = True) -> Environment:
    """Horizontal corridor near the top; optionally an open route below."""
    top = 460.0
    block_top = top - width
    obstacles = [
        _rect(60.0, 140.0, 450.0, block_top),
        _rect(60.0, top, 450.0, 506.0),
    ]
    if not open_bottom:
        obstacles.append(_rect(60.0, 6.0, 450.0, 140.0))
    name = f"corridor(w={width:g})" if open_bottom else f"corridor_l(w={width:g})"
    return Environment(obstacles, name=name)


def corridor_l(width: float = 128.0) -> Environment:
    return corridor(width=width, open_bottom=False)


def corridor_s(width: float = 190.0) -> Environment:
    """Wide corridor with small scattered obstacles inside it."""
    env = corridor(width=width, open_bottom=False)
    obstacles = [np.asarray(o) for o in env.obstacles]
    y = 460.0 - width / 2.0
    obstacles += [
        np.asarray(_rect(150.0, y - 8.0, 166.0, y + 8.0)),
        np.asarray(_rect(260.0, y + 30.0, 276.0, y + 46.0)),
        np.asarray(_rect(350.0, y - 40.0, 366.0, y - 24.0)),
    ]
    return Environment(obstacles, name=f"corridor_s(w={width:g})")


def maze(passage: float = 128.0) -> Environment:
    """Serpentine: three staggered walls force an S-shaped route."""
    t = 26.0
    obstacles = [
        _rect(0.0, 128.0, WORLD - passage, 128.0 + t),
        _rect(passage, 272.0, WORLD, 272.0 + t),
        _rect(0.0, 400.0, WORLD - passage, 400.0 + t),
    ]
    return Environment(obstacles, name=f"maze(p={passage:g})")


def straight_channel(gap: float, length: float = 320.0) -> Environment:
    """Two rooms joined only by a long straight channel of width gap: the
    blocking walls span the full world height, so every path must run the
    channel.  Built for controlled-clearance experiments."""
    x0 = (WORLD - length) / 2.0
    x1 = x0 + length
    yc = WORLD / 2.0
    obstacles = [
        _rect(x0, 0.0, x1, yc - gap / 2.0),
        _rect(x0, yc + gap / 2.0, x1, WORLD),
    ]
    return Environment(obstacles, name=f"channel(gap={gap:g})")


ENVIRONMENTS = {
    "gateway": gateway,
    "sparks": sparks,
    "corridor": corridor,
    "corridor_l": corridor_l,
    "corridor_s": corridor_s,
    "maze": maze,
}


def named_environment(name: str) -> Environment:
    try:
        return ENVIRONMENTS[name]()
    except KeyError:
        raise KeyError(f"unknown environment fixture: {name!r} (have {sorted(ENVIRONMENTS)})") from None


# ---------------------------------------------------------------------------
# clearance helpers
# ---------------------------------------------------------------------------


def convex_hull(points: np.ndarray) -> np.ndarray:
    """Monotone-chain hull, CCW."""
    pts = sorted(map(tuple, np.asarray(points, dtype=np.float64)))
    if len(pts) <= 2:
        return np.asarray(pts)

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and (
                (out[-1][0] - out[-2][0]) * (p[1] - out[-2][1])
                - (out[-1][1] - out[-2][1]) * (p[0] - out[-2][0])
            ) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return np.asarray(lower[:-1] + upper[:-1])


def min_hull_width(robot: RobotPolygon) -> float:
    """Minimum width of the robot's convex hull over all directions: the
    narrowest slot the robot can pass through at a fixed best orientation."""
    hull = convex_hull(robot.vertices)
    n = len(hull)
    best = math.inf
    for i in range(n):
        p = hull[i]
        q = hull[(i + 1) % n]
        d = q - p
        L = math.hypot(*d)
        if L < 1e-12:
            continue
        nx, ny = -d[1] / L, d[0] / L
        w = max(abs((hull[:, 0] - p[0]) * nx + (hull[:, 1] - p[1]) * ny))
        best = min(best, float(w))
    return best
