"""Decompose a robot polygon into nice triangles sharing one rotation origin.

A triangle is *nice* when its rotational sweep about the origin admits a
compact convex-piece representation (see :mod:`polyplan.sweeps`).  Two modes
exist:

* apex mode: the origin sits at a triangle vertex and the angle at one of the
  other two vertices is at least pi/2;
* general mode: the origin is outside the triangle and, with vertices a, b, c
  ordered by distance from the origin, the dot products <a, b-a>, <a, c-a>
  and <b, c-b> are all nonnegative (no edge dips inside the circle through
  its nearer endpoint).

Star-shaped robots fan-triangulate from the center into at most 2n apex
pieces.  General robots are ear-clipped and each triangle is refined into at
most 4 nice pieces (at most 6 for the one triangle holding the origin),
giving at most 4n-6 pieces overall.  All outputs live in the origin-centered
local frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geom import TAU

_REL = 1e-9  # relative tolerance for dot-product niceness tests


# ---------------------------------------------------------------------------
# polygon helpers
# ---------------------------------------------------------------------------


def signed_area(verts: np.ndarray) -> float:
    x = verts[:, 0]
    y = verts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def _segs_cross(p1, p2, p3, p4, tol):
    from . import kernels as K

    return K.seg_seg_dist(p1[0], p1[1], p2[0], p2[1], p3[0], p3[1], p4[0], p4[1]) <= tol


def is_simple_polygon(verts: np.ndarray, tol: float = TAU) -> bool:
    n = len(verts)
    if n < 3:
        return False
    for i in range(n):
        if np.hypot(*(verts[i] - verts[(i + 1) % n])) <= tol:
            return False  # repeated vertex
    for i in range(n):
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            if _segs_cross(verts[i], verts[(i + 1) % n], verts[j], verts[(j + 1) % n], tol):
                return False
    return True


def ear_clip(verts: np.ndarray) -> list[tuple[int, int, int]]:
    """O(n^2) ear clipping of a CCW simple polygon into n-2 index triples.

    Zero-area (collinear) ears are clipped without being emitted.
    """
    n = len(verts)
    idx = list(range(n))
    tris: list[tuple[int, int, int]] = []
    scale = float(np.abs(verts).max()) + 1.0
    area_tol = 1e-12 * scale * scale
    guard = 0
    while len(idx) > 3:
        guard += 1
        if guard > 4 * n * n:
            raise ValueError("ear clipping failed; polygon may be non-simple")
        clipped = False
        for k in range(len(idx)):
            i0 = idx[(k - 1) % len(idx)]
            i1 = idx[k]
            i2 = idx[(k + 1) % len(idx)]
            a, b, c = verts[i0], verts[i1], verts[i2]
            cr = _cross(a[0], a[1], b[0], b[1], c[0], c[1])
            if cr < -area_tol:
                continue  # reflex corner
            if cr <= area_tol:
                # collinear ear: drop vertex, emit nothing
                idx.pop(k)
                clipped = True
                break
            ok = True
            for m in idx:
                if m in (i0, i1, i2):
                    continue
                p = verts[m]
                if (
                    _cross(a[0], a[1], b[0], b[1], p[0], p[1]) > -area_tol
                    and _cross(b[0], b[1], c[0], c[1], p[0], p[1]) > -area_tol
                    and _cross(c[0], c[1], a[0], a[1], p[0], p[1]) > -area_tol
                ):
                    ok = False
                    break
            if ok:
                tris.append((i0, i1, i2))
                idx.pop(k)
                clipped = True
                break
        if not clipped:
            raise ValueError("no ear found; polygon may be non-simple")
    a, b, c = (verts[i] for i in idx)
    if _cross(a[0], a[1], b[0], b[1], c[0], c[1]) > area_tol:
        tris.append((idx[0], idx[1], idx[2]))
    return tris


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RobotPolygon:
    """Rigid robot: CCW simple polygon plus the rotation origin O (same
    frame).  kind 'star' promises star-shapedness about O; 'auto' probes."""

    vertices: np.ndarray
    origin: tuple[float, float]
    kind: str = "auto"
    name: str = "robot"

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=np.float64)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise ValueError("robot polygon needs at least 3 (x, y) vertices")
        if not np.isfinite(v).all():
            raise ValueError("robot vertices must be finite")
        if signed_area(v) < 0:
            v = v[::-1].copy()
        if not is_simple_polygon(v):
            raise ValueError("robot polygon must be simple (no repeated vertices, no self-crossing)")
        object.__setattr__(self, "vertices", v)
        if self.kind not in ("star", "general", "auto"):
            raise ValueError("kind must be star, general or auto")

    def local_vertices(self) -> np.ndarray:
        return self.vertices - np.asarray(self.origin)

    def circumradius(self) -> float:
        return float(np.hypot(*self.local_vertices().T).max())


@dataclass(frozen=True)
class NiceTriangle:
    """One decomposition piece in the origin-local frame.

    Apex mode stores (origin, p, q) with (origin, p, q) CCW; general mode
    stores vertices sorted by distance from origin, original orientation
    preserved.
    """

    verts: tuple[tuple[float, float], tuple[float, float], tuple[float, float]]
    mode: str  # "apex" | "general"
    r_j: float
    min_norm: float

    def as_array(self) -> np.ndarray:
        return np.asarray(self.verts, dtype=np.float64)

    def area(self) -> float:
        (ax, ay), (bx, by), (cx, cy) = self.verts
        return 0.5 * abs(_cross(ax, ay, bx, by, cx, cy))

    def is_ccw(self) -> bool:
        (ax, ay), (bx, by), (cx, cy) = self.verts
        return _cross(ax, ay, bx, by, cx, cy) > 0


@dataclass(frozen=True)
class Decomposition:
    triangles: tuple[NiceTriangle, ...]
    r0: float
    origin: tuple[float, float]


def _norm(p):
    return math.hypot(p[0], p[1])


def _mk_apex(p, q) -> NiceTriangle:
    if _cross(0.0, 0.0, p[0], p[1], q[0], q[1]) < 0:
        p, q = q, p
    return NiceTriangle(
        ((0.0, 0.0), (float(p[0]), float(p[1])), (float(q[0]), float(q[1]))),
        "apex",
        max(_norm(p), _norm(q)),
        0.0,
    )


def _tri_min_norm(a, b, c) -> float:
    from . import kernels as K

    return min(
        K.seg_point_dist(0.0, 0.0, a[0], a[1], b[0], b[1]),
        K.seg_point_dist(0.0, 0.0, b[0], b[1], c[0], c[1]),
        K.seg_point_dist(0.0, 0.0, c[0], c[1], a[0], a[1]),
    )


def _mk_general(a, b, c) -> NiceTriangle:
    vs = sorted([tuple(map(float, a)), tuple(map(float, b)), tuple(map(float, c))], key=_norm)
    return NiceTriangle(tuple(vs), "general", _norm(vs[2]), _tri_min_norm(*vs))


# ---------------------------------------------------------------------------
# apex (star) path
# ---------------------------------------------------------------------------


def is_nice_apex(b, c) -> tuple[bool, int]:
    """Niceness of the apex triangle (origin, b, c): true when the angle at b
    or at c is at least pi/2.  Returns (nice, index of the nice vertex)."""
    bx, by = b
    cx, cy = c
    area2 = abs(_cross(0.0, 0.0, bx, by, cx, cy))
    scale = max(_norm(b), _norm(c))
    if area2 <= 1e-12 * scale * scale or scale <= TAU:
        raise ValueError("degenerate apex triangle")
    tol = _REL * scale * scale
    if (-bx) * (cx - bx) + (-by) * (cy - by) <= tol:  # angle at b >= pi/2
        return True, 1
    if (-cx) * (bx - cx) + (-cy) * (by - cy) <= tol:  # angle at c >= pi/2
        return True, 2
    return False, -1


def split_apex(b, c) -> list[NiceTriangle]:
    """Split the apex triangle (origin, b, c) into 1 or 2 apex-nice pieces.

    When neither base angle reaches pi/2 the foot of the perpendicular from
    the origin onto [b, c] is interior and splits the triangle into two
    right-angled (hence nice) pieces.
    """
    nice, _ = is_nice_apex(b, c)
    if nice:
        return [_mk_apex(b, c)]
    bx, by = b
    cx, cy = c
    dx, dy = cx - bx, cy - by
    t = (-(bx * dx + by * dy)) / (dx * dx + dy * dy)
    d = (bx + t * dx, by + t * dy)
    return [_mk_apex(b, d), _mk_apex(d, c)]


def decompose_star(poly: RobotPolygon) -> Decomposition:
    """Fan-triangulate from the center and apex-split each fan triangle.

    Produces at most 2n apex-nice triangles for an n-gon.
    """
    verts = poly.local_vertices()
    n = len(verts)
    scale = float(np.abs(verts).max()) + 1.0
    for i in range(n):
        a = verts[i]
        b = verts[(i + 1) % n]
        if _cross(a[0], a[1], b[0], b[1], 0.0, 0.0) < -TAU * scale:
            raise ValueError("not star-shaped about O")
    out: list[NiceTriangle] = []
    for i in range(n):
        a = verts[i]
        b = verts[(i + 1) % n]
        if abs(_cross(0.0, 0.0, a[0], a[1], b[0], b[1])) <= 1e-12 * scale * scale:
            continue
        out.extend(split_apex(tuple(a), tuple(b)))
    if len(out) > 2 * n:
        raise AssertionError("star decomposition exceeded the 2n bound")
    return Decomposition(tuple(out), poly.circumradius(), tuple(map(float, poly.origin)))


# ---------------------------------------------------------------------------
# general path
# ---------------------------------------------------------------------------


def nice_dots(a, b, c) -> tuple[float, float, float]:
    """The three niceness dot products for norm-sorted vertices a, b, c."""
    return (
        a[0] * (b[0] - a[0]) + a[1] * (b[1] - a[1]),
        a[0] * (c[0] - a[0]) + a[1] * (c[1] - a[1]),
        b[0] * (c[0] - b[0]) + b[1] * (c[1] - b[1]),
    )


def is_nice_general(a, b, c, origin_interior_check: bool = True) -> bool:
    """Niceness of a triangle relative to the origin; vertices must be sorted
    by norm.  Raises if the origin lies strictly inside."""
    if origin_interior_check and _origin_strictly_inside(a, b, c):
        raise ValueError("origin inside triangle; use the apex decomposition path")
    scale = _norm(c) ** 2 + 1e-30
    tol = _REL * scale
    d1, d2, d3 = nice_dots(a, b, c)
    return d1 >= -tol and d2 >= -tol and d3 >= -tol


def _origin_strictly_inside(a, b, c) -> bool:
    s1 = _cross(a[0], a[1], b[0], b[1], 0.0, 0.0)
    s2 = _cross(b[0], b[1], c[0], c[1], 0.0, 0.0)
    s3 = _cross(c[0], c[1], a[0], a[1], 0.0, 0.0)
    scale = max(_norm(a), _norm(b), _norm(c)) + 1e-30
    tol = TAU * scale
    return (s1 > tol and s2 > tol and s3 > tol) or (s1 < -tol and s2 < -tol and s3 < -tol)


def _foot_on_segment(p, q):
    """Foot of the perpendicular from the origin onto segment [p, q], or None
    when it falls at/beyond an endpoint."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    qq = dx * dx + dy * dy
    if qq <= 1e-30:
        return None
    t = -(p[0] * dx + p[1] * dy) / qq
    if t <= 1e-9 or t >= 1.0 - 1e-9:
        return None
    return (p[0] + t * dx, p[1] + t * dy)


def _edge_condition_ok(p, q) -> bool:
    """Near-endpoint niceness condition for edge [p, q]: the edge must not dip
    inside the circle through its nearer endpoint."""
    if _norm(p) > _norm(q):
        p, q = q, p
    scale = _norm(q) ** 2 + 1e-30
    return p[0] * (q[0] - p[0]) + p[1] * (q[1] - p[1]) >= -_REL * scale


def split_general(tri, strict: bool = False) -> list[NiceTriangle]:
    """Partition a triangle with exterior origin into at most 4 nice pieces.

    Only violated edges are split (a violated edge gets the foot of the
    perpendicular from the origin inserted; the chord runs to the opposite
    vertex of the current piece).  Feet are tangency points, so every emitted
    piece satisfies the dot-product conditions by construction.
    """
    a, b, c = (tuple(map(float, v)) for v in tri)
    vs = sorted([a, b, c], key=_norm)
    if _origin_strictly_inside(a, b, c):
        raise ValueError("origin inside triangle; use the apex decomposition path")
    if is_nice_general(vs[0], vs[1], vs[2], origin_interior_check=False):
        return [_mk_general(a, b, c)]

    from . import kernels as K

    # edge of the triangle closest to the origin
    edges = [(a, b, c), (b, c, a), (c, a, b)]
    dists = [K.seg_point_dist(0.0, 0.0, p[0], p[1], q[0], q[1]) for p, q, _ in edges]
    p, q, r = edges[int(np.argmin(dists))]
    d = _foot_on_segment(p, q)

    def finish(u, v, w):
        """u is a tangency vertex of the piece (or the closest polygon
        vertex); the only possibly-violated edge is [v, w]."""
        if _edge_condition_ok(v, w):
            return [_mk_general(u, v, w)]
        g = _foot_on_segment(v, w)
        if g is None:
            return [_mk_general(u, v, w)]
        return [_mk_general(u, v, g), _mk_general(u, g, w)]

    if d is None:
        # nearest point of the triangle is its min-norm vertex; only the
        # opposite edge can be violated
        u = vs[0]
        others = [v for v in (a, b, c) if v != u]
        return finish(u, others[0], others[1])
    return finish(d, p, r) + finish(d, q, r)


def decompose_general(
    poly: RobotPolygon, triangulation: list[tuple[int, int, int]] | None = None
) -> Decomposition:
    """Triangulate the polygon and refine every triangle to nice pieces.

    The (at most one, barring boundary ties) triangle containing the origin
    goes through the star path: fan from O, apex-split each fan triangle.
    Everything else goes through :func:`split_general`.  Total count is at
    most 4n-6.
    """
    verts = poly.local_vertices()
    n = len(verts)
    if triangulation is None:
        triangulation = ear_clip(verts)
    from . import kernels as K

    scale = float(np.abs(verts).max()) + 1.0
    out: list[NiceTriangle] = []
    for (i, j, k) in triangulation:
        tri = (tuple(verts[i]), tuple(verts[j]), tuple(verts[k]))
        xs = np.array([tri[0][0], tri[1][0], tri[2][0]])
        ys = np.array([tri[0][1], tri[1][1], tri[2][1]])
        if K.point_in_polygon(xs, ys, 3, 0.0, 0.0, TAU * scale) >= 0:
            for m in range(3):
                p = tri[m]
                q = tri[(m + 1) % 3]
                if _norm(p) <= TAU * scale or _norm(q) <= TAU * scale:
                    continue  # vertex snapped onto O: fan edge degenerates
                if abs(_cross(0.0, 0.0, p[0], p[1], q[0], q[1])) <= 1e-12 * scale * scale:
                    continue
                out.extend(split_apex(p, q))
        else:
            out.extend(split_general(tri))
    if len(out) > 4 * n - 6:
        raise AssertionError("general decomposition exceeded the 4n-6 bound")
    return Decomposition(tuple(out), poly.circumradius(), tuple(map(float, poly.origin)))


def decompose(poly: RobotPolygon) -> Decomposition:
    """Dispatch on robot kind; 'auto' uses the star path when the declared
    origin lies in the polygon kernel."""
    if poly.kind == "star":
        return decompose_star(poly)
    if poly.kind == "general":
        return decompose_general(poly)
    try:
        return decompose_star(poly)
    except ValueError:
        return decompose_general(poly)


# ---------------------------------------------------------------------------
# tightness construction
# ---------------------------------------------------------------------------


def worst_case_instance(n: int) -> tuple[RobotPolygon, list[tuple[int, int, int]]]:
    """An n-gon on the unit circle whose nice refinement has exactly 4n-6
    pieces: a base triangle at angles 0, 2pi/3, 4pi/3 holds the origin (its
    three fan triangles are isoceles, so each splits in two), and every other
    triangle has all vertices on the circle, violating all three niceness
    conditions at once."""
    if n < 3:
        raise ValueError("n must be at least 3")
    angles = [2.0 * k * math.pi / (3.0 * (n - 2)) for k in range(n - 1)]
    angles.append(4.0 * math.pi / 3.0)
    verts = np.array([[math.cos(t), math.sin(t)] for t in angles])
    poly = RobotPolygon(verts, (0.0, 0.0), kind="general", name=f"tight-{n}")
    tris: list[tuple[int, int, int]] = [(0, n - 2, n - 1)]
    for k in range(1, n - 2):
        tris.append((0, k, k + 1))
    return poly, tris
