"""Planar primitives: angular ranges, obstacle features and basic shapes.

The collision machinery reasons about two kinds of objects: *features*
(obstacle corners and oriented edges, the atoms of collision information)
and *basic shapes* (half-planes, discs and disc complements composed into
intersections and unions).  Everything here is an immutable value; all
operations are pure functions, so concurrent use needs no coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels as K

TAU = 1e-9  # global incidence tolerance, world units
TWO_PI = 2.0 * math.pi

# side_of_feature verdicts
INSIDE = 1
OUTSIDE = -1
BOUNDARY = 0


# ---------------------------------------------------------------------------
# angular ranges
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AngularRange:
    """A CCW range of angles on the circle, stored as ordered endpoints in
    [0, 2*pi] with an explicit full-circle flag (avoids the mod-2*pi
    ambiguity of width-2*pi ranges)."""

    lo: float
    hi: float
    full: bool = False

    @staticmethod
    def full_circle() -> "AngularRange":
        return AngularRange(0.0, TWO_PI, True)

    def width(self) -> float:
        if self.full:
            return TWO_PI
        if self.hi > self.lo:
            return self.hi - self.lo
        return TWO_PI + self.hi - self.lo

    def mid(self) -> float:
        if self.full:
            return 0.0
        return (self.lo + self.width() * 0.5) % TWO_PI

    def contains(self, theta: float, tol: float = TAU) -> bool:
        if self.full:
            return True
        d = (theta - self.lo) % TWO_PI
        return d <= self.width() + tol or d >= TWO_PI - tol

    def halves(self) -> tuple["AngularRange", "AngularRange"]:
        if self.full:
            return AngularRange(0.0, math.pi), AngularRange(math.pi, TWO_PI)
        m = self.lo + self.width() * 0.5
        return AngularRange(self.lo, m), AngularRange(m, self.hi)

    def touches(self, other: "AngularRange") -> bool:
        """Ranges overlap or share an endpoint, with 0/2*pi identified."""
        if self.full or other.full:
            return True
        a0, a1 = self.lo, self.lo + self.width()
        b0, b1 = other.lo, other.lo + other.width()
        for shift in (-TWO_PI, 0.0, TWO_PI):
            if b0 + shift <= a1 + TAU and a0 <= b1 + shift + TAU:
                return True
        return False


def angular_width(rng: AngularRange) -> float:
    return rng.width()


# ---------------------------------------------------------------------------
# features
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Corner:
    x: float
    y: float
    convex: bool = True

    kind = "corner"


@dataclass(frozen=True)
class Edge:
    """Oriented obstacle edge; the obstacle interior lies to the LEFT of the
    directed line start -> end."""

    ax: float
    ay: float
    bx: float
    by: float

    kind = "edge"

    def __post_init__(self):
        if math.hypot(self.bx - self.ax, self.by - self.ay) <= TAU:
            raise ValueError("edge endpoints must be distinct")


Feature = Corner | Edge


def feature_row(f: Feature) -> np.ndarray:
    """Pack a feature into the 9-column kernel layout."""
    row = np.zeros(9)
    if isinstance(f, Corner):
        row[0] = 0.0
        row[1] = f.x
        row[2] = f.y
        row[3] = f.x
        row[4] = f.y
        row[5] = 1.0 if f.convex else 0.0
    else:
        row[0] = 1.0
        row[1] = f.ax
        row[2] = f.ay
        row[3] = f.bx
        row[4] = f.by
        dx = f.bx - f.ax
        dy = f.by - f.ay
        L = math.hypot(dx, dy)
        # interior is the left side: n = rot90ccw(d)/|d|, inside iff n.p >= off
        row[6] = -dy / L
        row[7] = dx / L
        row[8] = row[6] * f.ax + row[7] * f.ay
    return row


def feature_table(features: list[Feature]) -> np.ndarray:
    if not features:
        return np.zeros((0, 9))
    return np.stack([feature_row(f) for f in features])


def separation(p: tuple[float, float], f: Feature) -> float:
    """Distance from p to the feature (corner point or closed segment)."""
    table = feature_row(f).reshape(1, 9)
    return K.feature_sep(table, 0, float(p[0]), float(p[1]))


def side_of_feature(p: tuple[float, float], f: Feature, tol: float = TAU) -> int:
    """INSIDE/OUTSIDE/BOUNDARY verdict for p, valid when f is the feature
    nearest to p.  A convex corner puts p outside; an edge decides by the
    oriented line; points within tol of the line report BOUNDARY."""
    table = feature_row(f).reshape(1, 9)
    return K.feature_side(table, 0, float(p[0]), float(p[1]), tol)


# ---------------------------------------------------------------------------
# basic shapes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HalfPlane:
    """Points p with <n, p> <= off; n is unit within 1e-12."""

    nx: float
    ny: float
    off: float

    def __post_init__(self):
        n = math.hypot(self.nx, self.ny)
        if abs(n - 1.0) > 1e-12:
            raise ValueError("half-plane normal must be unit length")

    @staticmethod
    def through(ax, ay, bx, by, inside_x, inside_y) -> "HalfPlane":
        """Half-plane bounded by the line a-b whose inside contains the
        witness point."""
        dx = bx - ax
        dy = by - ay
        L = math.hypot(dx, dy)
        nx = -dy / L
        ny = dx / L
        off = nx * ax + ny * ay
        if nx * inside_x + ny * inside_y > off:
            nx, ny, off = -nx, -ny, -off
        return HalfPlane(nx, ny, off)

    def contains(self, x, y, tol=TAU):
        return self.nx * x + self.ny * y <= self.off + tol


@dataclass(frozen=True)
class Disc:
    cx: float
    cy: float
    r: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("disc radius must be nonnegative")

    def contains(self, x, y, tol=TAU):
        return math.hypot(x - self.cx, y - self.cy) <= self.r + tol


@dataclass(frozen=True)
class DiscComplement:
    cx: float
    cy: float
    r: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("radius must be nonnegative")

    def contains(self, x, y, tol=TAU):
        return math.hypot(x - self.cx, y - self.cy) >= self.r - tol


@dataclass(frozen=True)
class Annulus:
    cx: float
    cy: float
    r_in: float
    r_out: float

    def __post_init__(self):
        if not (0 <= self.r_in <= self.r_out):
            raise ValueError("annulus needs 0 <= inner <= outer radius")

    def contains(self, x, y, tol=TAU):
        d = math.hypot(x - self.cx, y - self.cy)
        return self.r_in - tol <= d <= self.r_out + tol


Primitive = HalfPlane | Disc | DiscComplement


def _part_row(p: Primitive) -> list[float]:
    if isinstance(p, HalfPlane):
        return [0.0, p.nx, p.ny, p.off]
    if isinstance(p, Disc):
        return [1.0, p.cx, p.cy, p.r]
    return [2.0, p.cx, p.cy, p.r]


@dataclass(frozen=True)
class OneBasicShape:
    """Intersection of primitives; at most one disc complement, which is what
    lets the segment-intersection test keep a single running subsegment."""

    parts: tuple[Primitive, ...]
    boundary: tuple = ()  # optional explicit boundary elements, see Region

    def __post_init__(self):
        ncomp = sum(isinstance(p, DiscComplement) for p in self.parts)
        if ncomp > 1:
            raise ValueError("a 1-basic shape may carry at most one disc complement")

    def contains(self, x, y, tol=TAU):
        return all(p.contains(x, y, tol) for p in self.parts)


@dataclass(frozen=True)
class TwoBasicShape:
    """Union of 1-basic shapes; membership is the disjunction."""

    pieces: tuple[OneBasicShape, ...]

    def contains(self, x, y, tol=TAU):
        return any(p.contains(x, y, tol) for p in self.pieces)


# boundary element constructors (rows of the kernels "bounds" array)


def seg_elem(ax, ay, bx, by):
    return [0.0, ax, ay, bx, by, 0.0]


def arc_elem(cx, cy, r, a0, span):
    return [1.0, cx, cy, r, a0 % TWO_PI, span]


@dataclass
class Region:
    """CSR-packed union of pieces with explicit boundaries (kernel-ready)."""

    parts: np.ndarray
    parts_off: np.ndarray
    bounds: np.ndarray
    bounds_off: np.ndarray
    npieces: int

    @staticmethod
    def from_pieces(pieces: list[tuple[list[list[float]], list[list[float]]]]) -> "Region":
        """Each piece is (part_rows, boundary_rows)."""
        parts = []
        bounds = []
        poff = [0]
        boff = [0]
        for prt, bnd in pieces:
            parts.extend(prt)
            bounds.extend(bnd)
            poff.append(len(parts))
            boff.append(len(bounds))
        parr = np.asarray(parts, dtype=np.float64).reshape(len(parts), 4)
        barr = np.asarray(bounds, dtype=np.float64).reshape(len(bounds), 6)
        return Region(
            parr,
            np.asarray(poff, dtype=np.int64),
            barr,
            np.asarray(boff, dtype=np.int64),
            len(pieces),
        )

    def contains(self, x, y, tol=TAU) -> bool:
        for p in range(self.npieces):
            if K.point_in_piece(self.parts, self.parts_off[p], self.parts_off[p + 1], x, y, tol):
                return True
        return False

    def contains_batch(self, pts: np.ndarray, tol: float = TAU) -> np.ndarray:
        return K.points_in_region(self.parts, self.parts_off, self.npieces, pts, tol)

    def sep_point(self, x, y, tol=TAU) -> float:
        return K.region_sep_point(
            self.parts, self.parts_off, self.bounds, self.bounds_off, self.npieces, x, y, tol
        )

    def sep_feature(self, f: Feature, tol: float = TAU) -> float:
        row = feature_table([f])
        return K.region_sep_feature(
            row, 0, 0.0, 0.0, self.parts, self.parts_off, self.bounds, self.bounds_off,
            self.npieces, tol,
        )

    def boundary_dist(self, x, y) -> float:
        """Distance from a point to the union's recorded boundary elements."""
        best = math.inf
        for k in range(self.bounds.shape[0]):
            best = min(best, K._point_elem_dist(self.bounds, k, x, y))
        return best


def shape_to_region(shape: OneBasicShape | TwoBasicShape) -> Region:
    pieces = shape.pieces if isinstance(shape, TwoBasicShape) else (shape,)
    packed = []
    for pc in pieces:
        packed.append(([_part_row(p) for p in pc.parts], [list(b) for b in pc.boundary]))
    return Region.from_pieces(packed)


def feature_intersects_1basic(f: Feature, shape: OneBasicShape, tol: float = TAU) -> bool:
    """True iff the feature meets the intersection of the shape's parts."""
    parts = np.asarray([_part_row(p) for p in shape.parts], dtype=np.float64).reshape(
        len(shape.parts), 4
    )
    if isinstance(f, Corner):
        return K.point_in_piece(parts, 0, parts.shape[0], f.x, f.y, tol)
    return K.segment_hits_piece(parts, 0, parts.shape[0], f.ax, f.ay, f.bx, f.by, tol)


def feature_intersects_2basic(f: Feature, shape: TwoBasicShape, tol: float = TAU) -> bool:
    return any(feature_intersects_1basic(f, pc, tol) for pc in shape.pieces)
