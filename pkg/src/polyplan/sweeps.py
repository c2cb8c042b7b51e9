"""Rotation-swept footprints of nice triangles as unions of convex-ish pieces.

An apex-mode triangle swept over a small angular range is the intersection of
three half-planes and a disc centered at the origin (a truncated triangle).
A general-mode nice triangle swept over a range of width <= pi/2 decomposes
into the start (or end) triangle, a sector and a truncated strip, all of
which expand nicely under Minkowski sums with discs.  When the range is too
wide for either representation we over-approximate with an annulus wedge,
which keeps the collision predicate conservative; angular splits restore the
exact representation below pi/2.

All constructions are anchored at the origin; callers translate features
instead of the region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels as K
from .decompose import NiceTriangle
from .geom import (
    TAU,
    TWO_PI,
    AngularRange,
    Disc,
    DiscComplement,
    Feature,
    HalfPlane,
    OneBasicShape,
    Region,
    TwoBasicShape,
    arc_elem,
    feature_table,
    seg_elem,
)


class RangeTooWideError(ValueError):
    """The angular range exceeds what the requested representation covers."""


def _rot(p, t):
    c = math.cos(t)
    s = math.sin(t)
    return (c * p[0] - s * p[1], s * p[0] + c * p[1])


def _norm(p):
    return math.hypot(p[0], p[1])


def _unit(p):
    n = _norm(p)
    return (p[0] / n, p[1] / n)


def _hp_left(a, b) -> list[float]:
    """Part row for the half-plane left of the directed line a -> b."""
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    L = math.hypot(dx, dy)
    nx = dy / L
    ny = -dx / L
    return [0.0, nx, ny, nx * a[0] + ny * a[1]]


def _hp_through(a, b, witness) -> list[float]:
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    L = math.hypot(dx, dy)
    nx = -dy / L
    ny = dx / L
    off = nx * a[0] + ny * a[1]
    if nx * witness[0] + ny * witness[1] > off:
        nx, ny, off = -nx, -ny, -off
    return [0.0, nx, ny, off]


def footprint_at(tri: NiceTriangle, pose: tuple[float, float, float]) -> np.ndarray:
    """World-frame triangle vertices at pose (x, y, theta)."""
    x, y, t = pose
    c = math.cos(t)
    s = math.sin(t)
    v = tri.as_array()
    out = np.empty_like(v)
    out[:, 0] = x + c * v[:, 0] - s * v[:, 1]
    out[:, 1] = y + s * v[:, 0] + c * v[:, 1]
    return out


def _triangle_piece(p0, p1, p2):
    """(parts, boundary) rows for a plain triangle, any orientation."""
    cr = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0])
    if cr < 0:
        p1, p2 = p2, p1
    parts = [_hp_left(p0, p1), _hp_left(p1, p2), _hp_left(p2, p0)]
    bounds = [seg_elem(*p0, *p1), seg_elem(*p1, *p2), seg_elem(*p2, *p0)]
    return parts, bounds


# ---------------------------------------------------------------------------
# apex sweeps (truncated triangles)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TTS:
    """Sweep of an apex triangle: three half-planes plus one origin disc."""

    halfplanes: tuple[HalfPlane, HalfPlane, HalfPlane]
    disc: Disc
    region: Region

    def contains(self, x, y, tol=TAU):
        return self.region.contains(x, y, tol)


def apex_angle(tri: NiceTriangle) -> float:
    p = tri.verts[1]
    q = tri.verts[2]
    d = (p[0] * q[0] + p[1] * q[1]) / (_norm(p) * _norm(q))
    return math.acos(min(1.0, max(-1.0, d)))


def tts_of(tri: NiceTriangle, rng: AngularRange) -> TTS:
    """Build the truncated-triangle sweep of an apex-nice triangle.

    Valid while the range width stays below pi minus the apex angle; beyond
    that the two radial edges cross and the sweep stops being convex.
    """
    if tri.mode != "apex":
        raise ValueError("tts_of needs an apex-mode triangle")
    from .decompose import is_nice_apex

    nice, _ = is_nice_apex(tri.verts[1], tri.verts[2])
    if not nice:
        raise ValueError("triangle is not apex-nice; its sweep is non-convex")
    a = apex_angle(tri)
    w = rng.width()
    if rng.full or w > math.pi - a + 1e-12:
        raise RangeTooWideError("range too wide for TTS")
    p, q = tri.verts[1], tri.verts[2]  # (origin, p, q) is CCW
    t1 = rng.lo
    t2 = rng.lo + w
    p1 = _rot(p, t1)
    q1 = _rot(q, t1)
    p2 = _rot(p, t2)
    q2 = _rot(q, t2)
    far_q = _norm(q) >= _norm(p)
    r = max(_norm(p), _norm(q))
    o = (0.0, 0.0)
    if far_q:
        parts = [_hp_left(o, p1), _hp_left(p1, q1), _hp_left(q2, o), [1.0, 0.0, 0.0, r]]
        bounds = [
            seg_elem(0.0, 0.0, *p1),
            seg_elem(*p1, *q1),
            arc_elem(0.0, 0.0, r, math.atan2(q1[1], q1[0]), w),
            seg_elem(*q2, 0.0, 0.0),
        ]
    else:
        parts = [_hp_left(o, p1), _hp_left(p2, q2), _hp_left(q2, o), [1.0, 0.0, 0.0, r]]
        bounds = [
            seg_elem(0.0, 0.0, *p1),
            arc_elem(0.0, 0.0, r, math.atan2(p1[1], p1[0]), w),
            seg_elem(*p2, *q2),
            seg_elem(*q2, 0.0, 0.0),
        ]
    region = Region.from_pieces([(parts, bounds)])
    hps = tuple(HalfPlane(row[1], row[2], row[3]) for row in parts[:3])
    return TTS(hps, Disc(0.0, 0.0, r), region)


# ---------------------------------------------------------------------------
# general sweeps (triangle + sector + truncated strip)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncStrip:
    """Strip between two parallel chords clipped to the annulus they span.

    inner1/outer1 bound the first chord, inner2/outer2 the second; inner
    points sit on the circle of radius r_in, outer points on r_out.
    """

    inner1: tuple[float, float]
    outer1: tuple[float, float]
    inner2: tuple[float, float]
    outer2: tuple[float, float]
    r_in: float
    r_out: float

    def chord_dir(self) -> tuple[float, float]:
        return _unit((self.outer1[0] - self.inner1[0], self.outer1[1] - self.inner1[1]))

    def piece(self):
        mid = (
            0.25 * (self.inner1[0] + self.outer1[0] + self.inner2[0] + self.outer2[0]),
            0.25 * (self.inner1[1] + self.outer1[1] + self.inner2[1] + self.outer2[1]),
        )
        d = self.chord_dir()
        parts = [
            _hp_through(self.inner1, self.outer1, mid),
            _hp_through(self.inner2, self.outer2, mid),
            # strip-cap separator: the band lies at <d, p> >= 0 while the
            # mirror component of strip-and-annulus sits strictly below
            [0.0, -d[0], -d[1], 0.0],
            [1.0, 0.0, 0.0, self.r_out],
        ]
        if self.r_in > TAU:
            parts.append([2.0, 0.0, 0.0, self.r_in])
        a_in0 = math.atan2(self.inner1[1], self.inner1[0])
        a_in1 = math.atan2(self.inner2[1], self.inner2[0])
        a_out0 = math.atan2(self.outer1[1], self.outer1[0])
        a_out1 = math.atan2(self.outer2[1], self.outer2[0])
        bounds = [
            seg_elem(*self.inner1, *self.outer1),
            seg_elem(*self.inner2, *self.outer2),
            arc_elem(0.0, 0.0, self.r_in, a_in0, (a_in1 - a_in0) % TWO_PI),
            arc_elem(0.0, 0.0, self.r_out, a_out0, (a_out1 - a_out0) % TWO_PI),
        ]
        return parts, bounds

    def region(self) -> Region:
        return Region.from_pieces([self.piece()])


@dataclass(frozen=True)
class SectorPiece:
    """Region bounded by two segments from an apex and a circular arc."""

    apex: tuple[float, float]
    p_from: tuple[float, float]
    p_to: tuple[float, float]
    radius: float

    def piece(self):
        a0 = math.atan2(self.p_from[1], self.p_from[0])
        span = (math.atan2(self.p_to[1], self.p_to[0]) - a0) % TWO_PI
        parts = [
            _hp_through(self.apex, self.p_from, self.p_to),
            _hp_through(self.apex, self.p_to, self.p_from),
            [1.0, 0.0, 0.0, self.radius],
        ]
        bounds = [
            seg_elem(*self.apex, *self.p_from),
            seg_elem(*self.apex, *self.p_to),
            arc_elem(0.0, 0.0, self.radius, a0, span),
        ]
        return parts, bounds


@dataclass(frozen=True)
class SweptSegmentDecomp:
    """Sector + truncated strip decomposition of the band swept by the chord
    between the innermost and outermost triangle vertices."""

    sector: SectorPiece | None
    strip: TruncStrip
    variant: str  # "sector_leading" | "sector_trailing"
    c_double_prime: tuple[float, float]


@dataclass(frozen=True)
class NSSDecomp:
    """Full sweep of a general nice triangle: triangle plus swept band."""

    triangle: tuple[tuple[float, float], ...]
    swept: SweptSegmentDecomp | None
    region: Region

    def contains(self, x, y, tol=TAU):
        return self.region.contains(x, y, tol)


def _chord_hit_radius(p, u, r):
    """Smallest t >= 0 with |p + t*u| = r (exists when |p| <= r)."""
    pu = p[0] * u[0] + p[1] * u[1]
    disc = pu * pu + r * r - (p[0] * p[0] + p[1] * p[1])
    return -pu + math.sqrt(max(disc, 0.0))


def nss_of(tri: NiceTriangle, rng: AngularRange) -> NSSDecomp:
    """Decompose the sweep of a general nice triangle over a range <= pi/2.

    The chord from the innermost vertex a to the outermost vertex c sweeps a
    band; depending on which end of the band admits a chord parallel to the
    other end inside the annulus, the band splits as strip + leading sector
    or trailing sector + strip.  The triangle itself enters at the start pose
    for CCW-ordered vertices and at the end pose for CW order.
    """
    if tri.mode != "general":
        raise ValueError("nss_of needs a general-mode triangle")
    w = rng.width()
    if rng.full or w > 0.5 * math.pi + 1e-12:
        raise RangeTooWideError("range too wide for a swept-band decomposition")
    a, b, c = tri.verts
    t1 = rng.lo
    t2 = rng.lo + w
    ccw = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) > 0
    t_tri = t1 if ccw else t2
    tri_pts = tuple(_rot(v, t_tri) for v in (a, b, c))
    pieces = [_triangle_piece(*tri_pts)]
    if w < 1e-12:
        return NSSDecomp(tri_pts, None, Region.from_pieces(pieces))

    rA = _norm(a)
    rC = _norm(c)
    a1 = _rot(a, t1)
    c1 = _rot(c, t1)
    a2 = _rot(a, t2)
    c2 = _rot(c, t2)
    sel_tol = -1e-9 * (rA + 1.0)

    u1 = _unit((c1[0] - a1[0], c1[1] - a1[1]))
    if a2[0] * u1[0] + a2[1] * u1[1] >= sel_tol:
        t = _chord_hit_radius(a2, u1, rC)
        cpp = (a2[0] + t * u1[0], a2[1] + t * u1[1])
        strip = TruncStrip(a1, c1, a2, cpp, rA, rC)
        sector = SectorPiece(a2, cpp, c2, rC)
        variant = "sector_leading"
    else:
        u2 = _unit((c2[0] - a2[0], c2[1] - a2[1]))
        if a1[0] * u2[0] + a1[1] * u2[1] >= sel_tol:
            t = _chord_hit_radius(a1, u2, rC)
            cpp = (a1[0] + t * u2[0], a1[1] + t * u2[1])
            strip = TruncStrip(a1, cpp, a2, c2, rA, rC)
            sector = SectorPiece(a1, c1, cpp, rC)
            variant = "sector_trailing"
        else:
            raise RangeTooWideError("no valid band decomposition for this range")

    pieces.append(strip.piece())
    sec_span = (
        math.atan2(sector.p_to[1], sector.p_to[0])
        - math.atan2(sector.p_from[1], sector.p_from[0])
    ) % TWO_PI
    keep_sector: SectorPiece | None = sector
    if sec_span < 1e-12 or sec_span > math.pi:
        keep_sector = None if sec_span < 1e-12 else keep_sector
        if sec_span > math.pi:
            raise RangeTooWideError("degenerate sector; falling back")
    if keep_sector is not None:
        pieces.append(keep_sector.piece())
    swept = SweptSegmentDecomp(keep_sector, strip, variant, cpp)
    return NSSDecomp(tri_pts, swept, Region.from_pieces(pieces))


# ---------------------------------------------------------------------------
# conservative fallback for wide ranges
# ---------------------------------------------------------------------------


def fallback_region(tri: NiceTriangle, rng: AngularRange) -> Region:
    """Annulus (optionally wedge-clipped) over-approximation of the sweep.

    Sound for any range width: the true sweep is contained, so features are
    only ever retained, never wrongly dropped.
    """
    w = rng.width()
    parts = [[1.0, 0.0, 0.0, tri.r_j]]
    bounds = [arc_elem(0.0, 0.0, tri.r_j, 0.0, TWO_PI)]
    if tri.min_norm > TAU:
        parts.append([2.0, 0.0, 0.0, tri.min_norm])
        bounds.append(arc_elem(0.0, 0.0, tri.min_norm, 0.0, TWO_PI))
    angs = [math.atan2(v[1], v[0]) for v in tri.verts if _norm(v) > TAU]
    if not rng.full and angs:
        base = angs[0]
        rel = [(t - base) % TWO_PI for t in angs]
        rel = [t - TWO_PI if t > math.pi else t for t in rel]
        ext = max(rel) - min(rel)
        if ext + w < math.pi - 1e-9:
            lo = base + min(rel) + rng.lo
            hi = base + max(rel) + rng.lo + w
            e_lo = (math.cos(lo), math.sin(lo))
            e_hi = (math.cos(hi), math.sin(hi))
            # wedge from lo CCW to hi: left of the lo ray, right of the hi ray
            parts.append([0.0, e_lo[1], -e_lo[0], 0.0])
            parts.append([0.0, -e_hi[1], e_hi[0], 0.0])
            ri = tri.min_norm
            bounds = [
                arc_elem(0.0, 0.0, tri.r_j, lo, (hi - lo) % TWO_PI),
                seg_elem(ri * e_lo[0], ri * e_lo[1], tri.r_j * e_lo[0], tri.r_j * e_lo[1]),
                seg_elem(ri * e_hi[0], ri * e_hi[1], tri.r_j * e_hi[0], tri.r_j * e_hi[1]),
            ]
            if ri > TAU:
                bounds.append(arc_elem(0.0, 0.0, ri, lo, (hi - lo) % TWO_PI))
    return Region.from_pieces([(parts, bounds)])


def swept_region(tri: NiceTriangle, rng: AngularRange) -> Region:
    """Sweep representation dispatch: exact where valid, fallback otherwise."""
    if not rng.full:
        if tri.mode == "apex":
            try:
                return tts_of(tri, rng).region
            except RangeTooWideError:
                pass
        else:
            try:
                return nss_of(tri, rng).region
            except RangeTooWideError:
                pass
    return fallback_region(tri, rng)


# ---------------------------------------------------------------------------
# expansions
# ---------------------------------------------------------------------------


def _region_of(obj) -> Region:
    if isinstance(obj, Region):
        return obj
    return obj.region


def separation_to(obj, f: Feature, tol: float = TAU) -> float:
    """Separation between a feature and a swept region (0 when touching)."""
    reg = _region_of(obj)
    row = feature_table([f])
    return K.region_sep_feature(
        row, 0, 0.0, 0.0, reg.parts, reg.parts_off, reg.bounds, reg.bounds_off, reg.npieces, tol
    )


def expand_and_test(obj, s: float, f: Feature, tol: float = TAU) -> bool:
    """True iff the feature meets the region expanded by a disc of radius s,
    i.e. iff its separation from the region is at most s (closed)."""
    return separation_to(obj, f, tol) <= s + tol


def trunc_strip_expansion(strip: TruncStrip, s: float) -> TwoBasicShape:
    """Explicit shape of the strip expanded by radius s: four corner discs
    plus a convex hexagon clipped to the grown annulus.

    With s = 0 the discs vanish and the hexagon collapses onto the strip's
    own sides.  When s exceeds the inner radius the inner circle vanishes and
    the inner boundary degenerates into the concave meeting point of the two
    inner corner discs.
    """
    A, C, A2, C2 = strip.inner1, strip.outer1, strip.inner2, strip.outer2
    mid = (0.25 * (A[0] + C[0] + A2[0] + C2[0]), 0.25 * (A[1] + C[1] + A2[1] + C2[1]))
    d = strip.chord_dir()
    hd = min(d[0] * A[0] + d[1] * A[1], d[0] * A2[0] + d[1] * A2[1])

    def outward(p, q, other):
        d = _unit((q[0] - p[0], q[1] - p[1]))
        n = (-d[1], d[0])
        if n[0] * (other[0] - p[0]) + n[1] * (other[1] - p[1]) > 0:
            n = (-n[0], -n[1])
        return n

    n1 = outward(A, C, A2)
    n2 = outward(A2, C2, A)
    hp = [
        HalfPlane(n1[0], n1[1], n1[0] * A[0] + n1[1] * A[1] + s),
        HalfPlane(n2[0], n2[1], n2[0] * A2[0] + n2[1] * A2[1] + s),
        # cap separator, offset by s: every expansion point is within s of a
        # band point, and the band satisfies <d, p> >= hd
        HalfPlane(-d[0], -d[1], s - hd),
    ]
    if s > TAU:
        for corner, n, inner in ((A, n1, True), (C, n1, False), (A2, n2, True), (C2, n2, False)):
            rad = _unit(corner) if _norm(corner) > TAU else (0.0, 0.0)
            sgn = -1.0 if inner else 1.0
            u = (corner[0] + sgn * s * rad[0], corner[1] + sgn * s * rad[1])
            v = (corner[0] + s * n[0], corner[1] + s * n[1])
            if math.hypot(u[0] - v[0], u[1] - v[1]) > TAU:
                row = _hp_through(u, v, mid)
                hp.append(HalfPlane(row[1], row[2], row[3]))
    hex_parts: list = list(hp) + [Disc(0.0, 0.0, strip.r_out + s)]
    if strip.r_in > s + TAU:
        hex_parts.append(DiscComplement(0.0, 0.0, strip.r_in - s))
    pieces = [OneBasicShape(tuple(hex_parts))]
    if s > TAU:
        for corner in (A, C, A2, C2):
            pieces.append(OneBasicShape((Disc(corner[0], corner[1], s),)))
    if s > strip.r_in + TAU:
        # the grown inner arc swallows the origin; everything within
        # s - r_in of the origin is within s of the arc
        pieces.append(OneBasicShape((Disc(0.0, 0.0, s - strip.r_in),)))
    return TwoBasicShape(tuple(pieces))
