"""Scalar numeric kernels for feature separation, shape tests and collisions.

Everything in this module is written in nopython-compatible style (plain
loops, ``math`` calls, preallocated numpy arrays) so that the whole file can
be compiled with numba.  Set ``POLYPLAN_PURE_NUMPY=1`` before import to skip
compilation and run the same functions interpreted; results are identical,
only slower.  ``benchmarks/bench_kernels.py`` times both paths.

Data conventions used throughout:

feature table  -- float64 array of shape (F, 9), one row per obstacle feature:
    col 0: kind (0 = corner, 1 = edge)
    col 1-2: point a (corner location, or edge start)
    col 3-4: point b (== a for corners, edge end otherwise)
    col 5: corner convexity flag (1 convex, 0 reflex; unused for edges)
    col 6-8: edge interior half-plane (nx, ny, off); a point p is on the
             obstacle side of the edge line iff nx*px + ny*py >= off.

region -- a union of convex-ish pieces, CSR-packed:
    parts  (P, 4): [kind, a, b, c] with kind 0 half-plane (n=(a,b), inside
                   n.p <= c), 1 disc (center (a,b), radius c), 2 disc
                   complement (inside iff dist >= c)
    bounds (Q, 6): boundary elements, kind 0 segment [0, ax, ay, bx, by, _],
                   kind 1 circular arc [1, cx, cy, r, a0, span] swept CCW
    parts_off / bounds_off: int64 piece offsets, length npieces + 1.
At most one disc complement may appear in any single piece.
"""

import math
import os

import numpy as np

_use_numba = os.environ.get("POLYPLAN_PURE_NUMPY", "0") != "1"
if _use_numba:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover - numba is a hard dep normally
        _use_numba = False

NUMBA_ACTIVE = _use_numba

if NUMBA_ACTIVE:
    def _jit(func):
        return _njit(cache=True, fastmath=False)(func)
else:
    def _jit(func):
        return func

TWO_PI = 2.0 * math.pi
_TINY = 1e-300


@_jit
def seg_point_dist(px, py, ax, ay, bx, by):
    """Distance from point (px,py) to the closed segment [a,b]."""
    dx = bx - ax
    dy = by - ay
    qq = dx * dx + dy * dy
    if qq <= _TINY:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / qq
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return math.hypot(px - ax - t * dx, py - ay - t * dy)


@_jit
def _segs_properly_cross(ax, ay, bx, by, cx, cy, dx, dy):
    d1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    d2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
    d3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
    d4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
    return ((d1 > 0.0 and d2 < 0.0) or (d1 < 0.0 and d2 > 0.0)) and (
        (d3 > 0.0 and d4 < 0.0) or (d3 < 0.0 and d4 > 0.0)
    )


@_jit
def seg_seg_dist(ax, ay, bx, by, cx, cy, dx, dy):
    """Distance between closed segments [a,b] and [c,d] (0 when crossing)."""
    if _segs_properly_cross(ax, ay, bx, by, cx, cy, dx, dy):
        return 0.0
    d0 = seg_point_dist(ax, ay, cx, cy, dx, dy)
    d1 = seg_point_dist(bx, by, cx, cy, dx, dy)
    d2 = seg_point_dist(cx, cy, ax, ay, bx, by)
    d3 = seg_point_dist(dx, dy, ax, ay, bx, by)
    best = d0
    if d1 < best:
        best = d1
    if d2 < best:
        best = d2
    if d3 < best:
        best = d3
    return best


@_jit
def feature_sep(feat, i, px, py):
    """Separation between point (px,py) and feature row i."""
    if feat[i, 0] == 0.0:
        return math.hypot(px - feat[i, 1], py - feat[i, 2])
    return seg_point_dist(px, py, feat[i, 1], feat[i, 2], feat[i, 3], feat[i, 4])


@_jit
def feature_seps(feat, idx, px, py):
    out = np.empty(idx.shape[0], dtype=np.float64)
    for k in range(idx.shape[0]):
        out[k] = feature_sep(feat, idx[k], px, py)
    return out


@_jit
def nearest_feature(feat, idx, px, py):
    """Position (within idx) and separation of the feature nearest to p."""
    best = -1
    bestd = 1e300
    for k in range(idx.shape[0]):
        d = feature_sep(feat, idx[k], px, py)
        if d < bestd:
            bestd = d
            best = k
    return best, bestd


@_jit
def feature_side(feat, i, px, py, tol):
    """Which side of feature i the point lies on, assuming i is its nearest
    feature: +1 obstacle interior, -1 exterior, 0 within tol of the boundary."""
    if feat[i, 0] == 0.0:
        if math.hypot(px - feat[i, 1], py - feat[i, 2]) <= tol:
            return 0
        if feat[i, 5] != 0.0:  # convex corner: nearest => outside
            return -1
        return 1
    v = feat[i, 6] * px + feat[i, 7] * py - feat[i, 8]
    if abs(v) <= tol:
        return 0
    if v > 0.0:
        return 1
    return -1


@_jit
def point_in_polygon(xs, ys, n, px, py, tol):
    """Ray-casting membership for a simple polygon: +1 inside, 0 on the
    boundary (within tol), -1 outside."""
    for i in range(n):
        j = (i + 1) % n
        if seg_point_dist(px, py, xs[i], ys[i], xs[j], ys[j]) <= tol:
            return 0
    inside = False
    for i in range(n):
        j = (i + 1) % n
        yi = ys[i]
        yj = ys[j]
        if (yi > py) != (yj > py):
            xcross = xs[i] + (py - yi) / (yj - yi) * (xs[j] - xs[i])
            if xcross > px:
                inside = not inside
    if inside:
        return 1
    return -1


@_jit
def point_in_obstacles(oxs, oys, ooff, px, py, tol):
    """Membership of p in the union of obstacle polygons (+1/0/-1)."""
    boundary = False
    for o in range(ooff.shape[0] - 1):
        s = ooff[o]
        n = ooff[o + 1] - s
        r = point_in_polygon(oxs[s:], oys[s:], n, px, py, tol)
        if r == 1:
            return 1
        if r == 0:
            boundary = True
    if boundary:
        return 0
    return -1


# ---------------------------------------------------------------------------
# region pieces
# ---------------------------------------------------------------------------


@_jit
def _ang_in(phi, a0, span):
    d = (phi - a0) % TWO_PI
    return d <= span + 1e-12


@_jit
def point_in_piece(parts, s, e, px, py, tol):
    for k in range(s, e):
        kind = parts[k, 0]
        if kind == 0.0:
            if parts[k, 1] * px + parts[k, 2] * py > parts[k, 3] + tol:
                return False
        elif kind == 1.0:
            if math.hypot(px - parts[k, 1], py - parts[k, 2]) > parts[k, 3] + tol:
                return False
        else:
            if math.hypot(px - parts[k, 1], py - parts[k, 2]) < parts[k, 3] - tol:
                return False
    return True


@_jit
def segment_hits_piece(parts, s, e, ax, ay, bx, by, tol):
    """True iff segment [a,b] meets the piece.

    The running parameter interval of the segment is clipped against every
    convex part; the (single) disc-complement part is tested last against the
    surviving subsegment, whose max center distance sits at an endpoint.
    """
    lo = 0.0
    hi = 1.0
    dx = bx - ax
    dy = by - ay
    comp = -1
    for k in range(s, e):
        kind = parts[k, 0]
        if kind == 2.0:
            comp = k
            continue
        if kind == 0.0:
            f0 = parts[k, 1] * ax + parts[k, 2] * ay
            fd = parts[k, 1] * dx + parts[k, 2] * dy
            c = parts[k, 3] + tol
            if abs(fd) <= _TINY:
                if f0 > c:
                    return False
            elif fd > 0.0:
                t = (c - f0) / fd
                if t < hi:
                    hi = t
            else:
                t = (c - f0) / fd
                if t > lo:
                    lo = t
        else:
            fx = ax - parts[k, 1]
            fy = ay - parts[k, 2]
            r = parts[k, 3] + tol
            qa = dx * dx + dy * dy
            qb = 2.0 * (fx * dx + fy * dy)
            qc = fx * fx + fy * fy - r * r
            if qa <= _TINY:
                if qc > 0.0:
                    return False
            else:
                disc = qb * qb - 4.0 * qa * qc
                if disc < 0.0:
                    return False
                sq = math.sqrt(disc)
                t0 = (-qb - sq) / (2.0 * qa)
                t1 = (-qb + sq) / (2.0 * qa)
                if t0 > lo:
                    lo = t0
                if t1 < hi:
                    hi = t1
        if lo > hi:
            return False
    if comp >= 0:
        r = parts[comp, 3] - tol
        d0 = math.hypot(ax + lo * dx - parts[comp, 1], ay + lo * dy - parts[comp, 2])
        d1 = math.hypot(ax + hi * dx - parts[comp, 1], ay + hi * dy - parts[comp, 2])
        if d0 < r and d1 < r:
            return False
    return True


@_jit
def _point_arc_dist(px, py, cx, cy, r, a0, span):
    dx = px - cx
    dy = py - cy
    rho = math.hypot(dx, dy)
    if rho > _TINY and _ang_in(math.atan2(dy, dx), a0, span):
        return abs(rho - r)
    d0 = math.hypot(px - (cx + r * math.cos(a0)), py - (cy + r * math.sin(a0)))
    a1 = a0 + span
    d1 = math.hypot(px - (cx + r * math.cos(a1)), py - (cy + r * math.sin(a1)))
    if d0 < d1:
        return d0
    return d1


@_jit
def _seg_arc_dist(ax, ay, bx, by, cx, cy, r, a0, span):
    dx = bx - ax
    dy = by - ay
    fx = ax - cx
    fy = ay - cy
    qa = dx * dx + dy * dy
    if qa > _TINY:
        qb = 2.0 * (fx * dx + fy * dy)
        qc = fx * fx + fy * fy - r * r
        disc = qb * qb - 4.0 * qa * qc
        if disc >= 0.0:
            sq = math.sqrt(disc)
            for sgn in (-1.0, 1.0):
                t = (-qb + sgn * sq) / (2.0 * qa)
                if 0.0 <= t <= 1.0:
                    if _ang_in(math.atan2(fy + t * dy, fx + t * dx), a0, span):
                        return 0.0
    best = 1e300
    for aa in (a0, a0 + span):
        d = seg_point_dist(cx + r * math.cos(aa), cy + r * math.sin(aa), ax, ay, bx, by)
        if d < best:
            best = d
    d = _point_arc_dist(ax, ay, cx, cy, r, a0, span)
    if d < best:
        best = d
    d = _point_arc_dist(bx, by, cx, cy, r, a0, span)
    if d < best:
        best = d
    if qa > _TINY:
        t = -(fx * dx + fy * dy) / qa
        if 0.0 < t < 1.0:
            gx = fx + t * dx
            gy = fy + t * dy
            rho = math.hypot(gx, gy)
            if rho > _TINY and _ang_in(math.atan2(gy, gx), a0, span):
                d = abs(rho - r)
                if d < best:
                    best = d
    return best


@_jit
def _point_elem_dist(bnds, k, px, py):
    if bnds[k, 0] == 0.0:
        return seg_point_dist(px, py, bnds[k, 1], bnds[k, 2], bnds[k, 3], bnds[k, 4])
    return _point_arc_dist(px, py, bnds[k, 1], bnds[k, 2], bnds[k, 3], bnds[k, 4], bnds[k, 5])


@_jit
def _seg_elem_dist(bnds, k, ax, ay, bx, by):
    if bnds[k, 0] == 0.0:
        return seg_seg_dist(ax, ay, bx, by, bnds[k, 1], bnds[k, 2], bnds[k, 3], bnds[k, 4])
    return _seg_arc_dist(ax, ay, bx, by, bnds[k, 1], bnds[k, 2], bnds[k, 3], bnds[k, 4], bnds[k, 5])


@_jit
def region_sep_point(parts, poff, bnds, boff, npieces, px, py, tol):
    """Separation between a point and the union of pieces."""
    best = 1e300
    for p in range(npieces):
        if point_in_piece(parts, poff[p], poff[p + 1], px, py, tol):
            return 0.0
        for k in range(boff[p], boff[p + 1]):
            d = _point_elem_dist(bnds, k, px, py)
            if d < best:
                best = d
    return best


@_jit
def region_sep_segment(parts, poff, bnds, boff, npieces, ax, ay, bx, by, tol):
    """Separation between a closed segment and the union of pieces."""
    best = 1e300
    for p in range(npieces):
        if segment_hits_piece(parts, poff[p], poff[p + 1], ax, ay, bx, by, tol):
            return 0.0
        for k in range(boff[p], boff[p + 1]):
            d = _seg_elem_dist(bnds, k, ax, ay, bx, by)
            if d < best:
                best = d
    return best


@_jit
def region_sep_feature(feat, i, ox, oy, parts, poff, bnds, boff, npieces, tol):
    """Separation between feature i (shifted by -(ox,oy)) and a region."""
    if feat[i, 0] == 0.0:
        return region_sep_point(
            parts, poff, bnds, boff, npieces, feat[i, 1] - ox, feat[i, 2] - oy, tol
        )
    return region_sep_segment(
        parts,
        poff,
        bnds,
        boff,
        npieces,
        feat[i, 1] - ox,
        feat[i, 2] - oy,
        feat[i, 3] - ox,
        feat[i, 4] - oy,
        tol,
    )


@_jit
def region_filter(feat, idx, ox, oy, rb, parts, poff, bnds, boff, npieces, tol):
    """Mask of candidate features whose separation from the region (anchored
    at (ox,oy)) is at most rb."""
    keep = np.empty(idx.shape[0], dtype=np.bool_)
    for k in range(idx.shape[0]):
        keep[k] = (
            region_sep_feature(feat, idx[k], ox, oy, parts, poff, bnds, boff, npieces, tol)
            <= rb + tol
        )
    return keep


@_jit
def _feature_within_pieces(feat, i, ox, oy, parts, poff, bnds, boff, p0, p1, cutoff, tol):
    """True iff feature i (shifted by -(ox,oy)) comes within cutoff of the
    union of pieces p0..p1; early-exits piece by piece."""
    if feat[i, 0] == 0.0:
        px = feat[i, 1] - ox
        py = feat[i, 2] - oy
        for p in range(p0, p1):
            if point_in_piece(parts, poff[p], poff[p + 1], px, py, tol):
                return True
            for k in range(boff[p], boff[p + 1]):
                if _point_elem_dist(bnds, k, px, py) <= cutoff:
                    return True
        return False
    ax = feat[i, 1] - ox
    ay = feat[i, 2] - oy
    bx = feat[i, 3] - ox
    by = feat[i, 4] - oy
    for p in range(p0, p1):
        if segment_hits_piece(parts, poff[p], poff[p + 1], ax, ay, bx, by, tol):
            return True
        for k in range(boff[p], boff[p + 1]):
            if _seg_elem_dist(bnds, k, ax, ay, bx, by) <= cutoff:
                return True
    return False


@_jit
def filter_tris(feat, cand, cand_off, ox, oy, rb, parts, poff, bnds, boff, piece_off, tol):
    """Per-triangle region filter over CSR-packed candidate sets.

    cand/cand_off: candidate feature ids per triangle (len(cand_off) = ntri+1)
    piece_off:     piece index range per triangle into parts/bounds offsets
    Returns a keep mask aligned with cand.
    """
    keep = np.zeros(cand.shape[0], dtype=np.bool_)
    cutoff = rb + tol
    for j in range(cand_off.shape[0] - 1):
        p0 = piece_off[j]
        p1 = piece_off[j + 1]
        for k in range(cand_off[j], cand_off[j + 1]):
            keep[k] = _feature_within_pieces(
                feat, cand[k], ox, oy, parts, poff, bnds, boff, p0, p1, cutoff, tol
            )
    return keep


@_jit
def points_in_region(parts, poff, npieces, pts, tol):
    """Batch membership of points in a union of pieces."""
    out = np.zeros(pts.shape[0], dtype=np.bool_)
    for i in range(pts.shape[0]):
        for p in range(npieces):
            if point_in_piece(parts, poff[p], poff[p + 1], pts[i, 0], pts[i, 1], tol):
                out[i] = True
                break
    return out


@_jit
def ball_filter_tris(feat, glob, mx, my, rb, r_j, tol):
    """Per-triangle midpoint-ball filter applied to one shared candidate
    list: keep[j, k] = Sep(m, feat[glob[k]]) <= rb + r_j[j]."""
    n = glob.shape[0]
    ntri = r_j.shape[0]
    seps = np.empty(n, dtype=np.float64)
    for k in range(n):
        seps[k] = feature_sep(feat, glob[k], mx, my)
    keep = np.empty((ntri, n), dtype=np.bool_)
    for j in range(ntri):
        cut = rb + r_j[j] + tol
        for k in range(n):
            keep[j, k] = seps[k] <= cut
    return keep


# ---------------------------------------------------------------------------
# exact rigid-body collision
# ---------------------------------------------------------------------------


@_jit
def pose_collides(rvx, rvy, oxs, oys, ooff, x, y, theta, rmax, tol):
    """Exact contact test of the robot footprint at (x, y, theta) against all
    obstacle polygons.  Closed semantics: touching within tol collides."""
    n = rvx.shape[0]
    ct = math.cos(theta)
    st = math.sin(theta)
    wx = np.empty(n, dtype=np.float64)
    wy = np.empty(n, dtype=np.float64)
    for i in range(n):
        wx[i] = x + ct * rvx[i] - st * rvy[i]
        wy[i] = y + st * rvx[i] + ct * rvy[i]
    for o in range(ooff.shape[0] - 1):
        s = ooff[o]
        e = ooff[o + 1]
        # circumradius prune against the obstacle bbox
        lox = 1e300
        hix = -1e300
        loy = 1e300
        hiy = -1e300
        for i in range(s, e):
            if oxs[i] < lox:
                lox = oxs[i]
            if oxs[i] > hix:
                hix = oxs[i]
            if oys[i] < loy:
                loy = oys[i]
            if oys[i] > hiy:
                hiy = oys[i]
        ddx = max(lox - x, 0.0, x - hix)
        ddy = max(loy - y, 0.0, y - hiy)
        if math.hypot(ddx, ddy) > rmax + tol:
            continue
        m = e - s
        hit = False
        for i in range(n):
            i2 = (i + 1) % n
            for j in range(m):
                j2 = (j + 1) % m
                d = seg_seg_dist(
                    wx[i], wy[i], wx[i2], wy[i2],
                    oxs[s + j], oys[s + j], oxs[s + j2], oys[s + j2],
                )
                if d <= tol:
                    hit = True
                    break
            if hit:
                break
        if hit:
            return True
        if point_in_polygon(oxs[s:], oys[s:], m, wx[0], wy[0], tol) >= 0:
            return True
        if point_in_polygon(wx, wy, n, oxs[s], oys[s], tol) >= 0:
            return True
    return False


@_jit
def poses_collide(rvx, rvy, oxs, oys, ooff, poses, rmax, tol):
    out = np.empty(poses.shape[0], dtype=np.bool_)
    for k in range(poses.shape[0]):
        out[k] = pose_collides(
            rvx, rvy, oxs, oys, ooff, poses[k, 0], poses[k, 1], poses[k, 2], rmax, tol
        )
    return out


@_jit
def max_vertex_displacement(rvx, rvy, x1, y1, t1, x2, y2, t2):
    """Largest vertex displacement between two placements of the robot."""
    c1 = math.cos(t1)
    s1 = math.sin(t1)
    c2 = math.cos(t2)
    s2 = math.sin(t2)
    best = 0.0
    for i in range(rvx.shape[0]):
        ax = x1 + c1 * rvx[i] - s1 * rvy[i]
        ay = y1 + s1 * rvx[i] + c1 * rvy[i]
        bx = x2 + c2 * rvx[i] - s2 * rvy[i]
        by = y2 + s2 * rvx[i] + c2 * rvy[i]
        d = math.hypot(ax - bx, ay - by)
        if d > best:
            best = d
    return best


def warmup():
    """Force compilation of the hot kernels (no-op on the interpreted path)."""
    feat = np.zeros((2, 9))
    feat[1, 0] = 1.0
    feat[1, 3] = 1.0
    idx = np.arange(2, dtype=np.int64)
    feature_seps(feat, idx, 0.5, 0.5)
    nearest_feature(feat, idx, 0.5, 0.5)
    feature_side(feat, 1, 0.5, 0.5, 1e-9)
    parts = np.array([[0.0, 1.0, 0.0, 1.0], [1.0, 0.0, 0.0, 2.0], [2.0, 0.0, 0.0, 0.5]])
    poff = np.array([0, 3], dtype=np.int64)
    bnds = np.array(
        [[0.0, 0.0, 0.0, 1.0, 0.0, 0.0], [1.0, 0.0, 0.0, 1.0, 0.0, math.pi]]
    )
    boff = np.array([0, 2], dtype=np.int64)
    region_filter(feat, idx, 0.1, 0.1, 0.5, parts, poff, bnds, boff, 1, 1e-9)
    oxs = np.array([3.0, 4.0, 4.0, 3.0])
    oys = np.array([3.0, 3.0, 4.0, 4.0])
    ooff = np.array([0, 4], dtype=np.int64)
    poses = np.zeros((2, 3))
    poses_collide(np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0]), oxs, oys, ooff, poses, 2.0, 1e-9)
    max_vertex_displacement(np.array([1.0]), np.array([0.0]), 0, 0, 0, 1, 1, 0.5)
    point_in_obstacles(oxs, oys, ooff, 3.5, 3.5, 1e-9)
