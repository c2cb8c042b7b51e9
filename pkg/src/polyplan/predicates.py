"""Soft box classification: FREE / STUCK / MIXED via per-triangle feature sets.

A box is a translational square times an angular range.  While the angular
range is still the full circle, one global feature set is kept: features
within r_B + r0 of the box midpoint.  Once angular splitting starts, each
decomposition triangle T_j keeps its own set: features within r_B + r_j of
the midpoint that also meet the r_B-expansion of T_j's swept footprint over
the box's angular range.  Child sets only ever filter parent sets, so sets
shrink monotonically down the tree.

A triangle's verdict turns definite exactly when its feature set goes empty:
its swept footprint is then uniformly inside or outside the obstacle set,
and one witness point decides which.  Verdicts compose across triangles as:
STUCK if any triangle is stuck, FREE if all are free, MIXED otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels as K
from .decompose import Decomposition, RobotPolygon, decompose
from .geom import TAU, AngularRange, Corner, Edge, Feature, feature_table
from .sweeps import Region, swept_region

FREE = 1
STUCK = 2
MIXED = 3

CLASS_NAMES = {FREE: "FREE", STUCK: "STUCK", MIXED: "MIXED"}

_EMPTY = np.empty(0, dtype=np.int64)


# ---------------------------------------------------------------------------
# environment
# ---------------------------------------------------------------------------


def polygon_features(verts: np.ndarray) -> list[Feature]:
    """Corners and oriented edges of one CCW solid polygon."""
    n = len(verts)
    out: list[Feature] = []
    for i in range(n):
        p = verts[(i - 1) % n]
        q = verts[i]
        r = verts[(i + 1) % n]
        cr = (q[0] - p[0]) * (r[1] - q[1]) - (q[1] - p[1]) * (r[0] - q[0])
        out.append(Corner(float(q[0]), float(q[1]), convex=cr > 0))
    for i in range(n):
        q = verts[i]
        r = verts[(i + 1) % n]
        out.append(Edge(float(q[0]), float(q[1]), float(r[0]), float(r[1])))
    return out


@dataclass
class Environment:
    """Workspace: bounding box plus CCW solid obstacle polygons."""

    obstacles: list[np.ndarray]
    bbox: tuple[float, float, float, float] = (0.0, 0.0, 512.0, 512.0)
    name: str = "env"
    features: list[Feature] = field(default_factory=list)
    feat: np.ndarray = field(default_factory=lambda: np.zeros((0, 9)))
    oxs: np.ndarray = field(default_factory=lambda: np.zeros(0))
    oys: np.ndarray = field(default_factory=lambda: np.zeros(0))
    ooff: np.ndarray = field(default_factory=lambda: np.zeros(1, dtype=np.int64))

    def __post_init__(self):
        from .decompose import is_simple_polygon, signed_area

        norm_obs = []
        for i, ob in enumerate(self.obstacles):
            v = np.asarray(ob, dtype=np.float64)
            if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
                raise ValueError(f"obstacle {i}: need at least 3 (x, y) vertices")
            if signed_area(v) < 0:
                v = v[::-1].copy()
            if not is_simple_polygon(v):
                raise ValueError(f"obstacle {i}: polygon must be simple")
            norm_obs.append(v)
        self.obstacles = norm_obs
        self._check_disjoint(norm_obs)
        feats: list[Feature] = []
        for v in norm_obs:
            feats.extend(polygon_features(v))
        self.features = feats
        self.feat = feature_table(feats)
        if norm_obs:
            self.oxs = np.concatenate([v[:, 0] for v in norm_obs])
            self.oys = np.concatenate([v[:, 1] for v in norm_obs])
            self.ooff = np.cumsum([0] + [len(v) for v in norm_obs]).astype(np.int64)
        else:
            self.oxs = np.zeros(0)
            self.oys = np.zeros(0)
            self.ooff = np.zeros(1, dtype=np.int64)

    @staticmethod
    def _check_disjoint(obstacles: list[np.ndarray]):
        """Obstacle interiors must be pairwise disjoint (touching boundaries
        are tolerated)."""

        def crosses(a, b):
            na, nb = len(a), len(b)
            for i in range(na):
                p1, p2 = a[i], a[(i + 1) % na]
                for j in range(nb):
                    q1, q2 = b[j], b[(j + 1) % nb]
                    if K._segs_properly_cross(
                        p1[0], p1[1], p2[0], p2[1], q1[0], q1[1], q2[0], q2[1]
                    ):
                        return True
            return False

        for i in range(len(obstacles)):
            for j in range(i + 1, len(obstacles)):
                a, b = obstacles[i], obstacles[j]
                if crosses(a, b):
                    raise ValueError(f"obstacles {i} and {j} overlap")
                for p, poly in ((a[0], b), (b[0], a)):
                    if K.point_in_polygon(
                        np.ascontiguousarray(poly[:, 0]),
                        np.ascontiguousarray(poly[:, 1]),
                        len(poly), p[0], p[1], -TAU,
                    ) == 1:
                        raise ValueError(f"obstacles {i} and {j} overlap")

    def point_status(self, x: float, y: float, tol: float = TAU) -> int:
        """+1 inside an obstacle, 0 on a boundary, -1 in free workspace."""
        return K.point_in_obstacles(self.oxs, self.oys, self.ooff, x, y, tol)


# ---------------------------------------------------------------------------
# world: everything the classifier needs, plus the swept-region cache
# ---------------------------------------------------------------------------


class World:
    """Environment + robot decomposition packed for the kernels.

    Swept regions depend only on (triangle, angular range) since they are
    anchored at the origin; ranges recur across the whole subdivision, so
    regions are memoized.
    """

    def __init__(self, env: Environment, robot: RobotPolygon, decomp: Decomposition | None = None):
        self.env = env
        self.robot = robot
        self.decomp = decomp if decomp is not None else decompose(robot)
        self.r0 = self.decomp.r0
        self.triangles = self.decomp.triangles
        self.r_j = np.array([t.r_j for t in self.triangles])
        lv = robot.local_vertices()
        self.rvx = np.ascontiguousarray(lv[:, 0])
        self.rvy = np.ascontiguousarray(lv[:, 1])
        self._regions: dict[tuple[int, float, float], Region] = {}
        self._stacked: dict[tuple[float, float], tuple] = {}
        self.stats = {"empty_side_disagreements": 0, "regions_built": 0}

    @property
    def ntri(self) -> int:
        return len(self.triangles)

    def region_for(self, j: int, rng: AngularRange) -> Region:
        key = (j, rng.lo, rng.hi)
        reg = self._regions.get(key)
        if reg is None:
            reg = swept_region(self.triangles[j], rng)
            self._regions[key] = reg
            self.stats["regions_built"] += 1
        return reg

    def stacked_regions(self, rng: AngularRange):
        """All triangles' swept regions for one angular range, concatenated
        into a single parts/bounds CSR for the fused filter kernel."""
        key = (rng.lo, rng.hi)
        st = self._stacked.get(key)
        if st is None:
            regs = [self.region_for(j, rng) for j in range(self.ntri)]
            parts = np.concatenate([r.parts for r in regs])
            bnds = np.concatenate([r.bounds for r in regs])
            poff = [np.int64(0)]
            boff = [np.int64(0)]
            piece_off = [0]
            pbase = 0
            bbase = 0
            for r in regs:
                poff.extend(r.parts_off[1:] + pbase)
                boff.extend(r.bounds_off[1:] + bbase)
                pbase += r.parts.shape[0]
                bbase += r.bounds.shape[0]
                piece_off.append(piece_off[-1] + r.npieces)
            st = (
                parts,
                np.asarray(poff, dtype=np.int64),
                bnds,
                np.asarray(boff, dtype=np.int64),
                np.asarray(piece_off, dtype=np.int64),
            )
            self._stacked[key] = st
        return st


def exact_collides(robot: RobotPolygon, pose, env: Environment, tol: float = TAU) -> bool:
    """Exact static collision test of the robot footprint against Omega.

    Closed-obstacle semantics: contact within tol counts as collision.
    """
    lv = robot.local_vertices()
    return bool(
        K.pose_collides(
            np.ascontiguousarray(lv[:, 0]),
            np.ascontiguousarray(lv[:, 1]),
            env.oxs,
            env.oys,
            env.ooff,
            float(pose[0]),
            float(pose[1]),
            float(pose[2]),
            robot.circumradius(),
            tol,
        )
    )


# ---------------------------------------------------------------------------
# feature sets
# ---------------------------------------------------------------------------


class FeatureSet:
    """Per-box feature bookkeeping.

    Phase 'T' keeps one global index array.  Phase 'R' keeps one candidate
    list per triangle, CSR-packed (cand holds feature ids, off[j]:off[j+1]
    delimits triangle j), plus the cached definite per-triangle verdicts for
    segments that have gone empty.
    """

    __slots__ = ("phase", "glob", "cand", "off", "verdicts")

    def __init__(self, phase, glob=None, cand=None, off=None, verdicts=None):
        self.phase = phase
        self.glob = glob if glob is not None else _EMPTY
        self.cand = cand
        self.off = off
        self.verdicts = verdicts

    @staticmethod
    def root(world: World) -> "FeatureSet":
        return FeatureSet("T", np.arange(world.env.feat.shape[0], dtype=np.int64))

    def count(self) -> int:
        if self.phase == "T":
            return int(self.glob.size)
        return int(self.cand.size)

    def per_counts(self) -> list[int]:
        if self.phase == "R":
            return np.diff(self.off).tolist()
        return [int(self.glob.size)]

    def tri_features(self, j: int) -> np.ndarray:
        if self.phase == "T":
            return self.glob
        return self.cand[self.off[j] : self.off[j + 1]]


def classify_empty_box(mx, my, parent_idx, world: World, tol: float = TAU) -> int:
    """Definite verdict for a box whose global feature set emptied: consult
    the feature of the parent set nearest to the midpoint and read off the
    side.  Verified against the exact point-in-obstacles test; on the (never
    observed) disagreement the exact answer wins and a counter ticks."""
    if parent_idx.size == 0:
        return FREE if world.env.point_status(mx, my, tol) == -1 else STUCK
    pos, _ = K.nearest_feature(world.env.feat, parent_idx, mx, my)
    side = K.feature_side(world.env.feat, parent_idx[pos], mx, my, tol)
    exact = world.env.point_status(mx, my, tol)
    if exact == 0:
        return MIXED
    verdict = STUCK if exact == 1 else FREE
    if side != 0 and (side == 1) != (exact == 1):
        world.stats["empty_side_disagreements"] += 1
    return verdict


def _triangle_verdict(j: int, mx, my, rng: AngularRange, world: World) -> int:
    """Definite verdict for triangle j once its feature set emptied: its
    swept footprint is uniformly sided, so test one footprint point."""
    tri = world.triangles[j]
    (ax, ay), (bx, by), (cx, cy) = tri.verts
    gx = (ax + bx + cx) / 3.0
    gy = (ay + by + cy) / 3.0
    t = rng.mid()
    ct, st = math.cos(t), math.sin(t)
    wx = mx + ct * gx - st * gy
    wy = my + st * gx + ct * gy
    status = world.env.point_status(wx, wy)
    if status == 0:
        return MIXED
    return STUCK if status == 1 else FREE


def evaluate_box(mx, my, r_b, rng: AngularRange, parent_fset: FeatureSet, world: World):
    """Build the box's feature set from its parent's and classify it.

    Returns (box class, feature set).  The midpoint-ball test runs once at
    the transition into angular splitting (the translational square, hence
    the ball, is fixed from then on); deeper angular children only re-test
    against their shrunken swept regions.
    """
    feat = world.env.feat
    if rng.full:
        seps = K.feature_seps(feat, parent_fset.glob, mx, my)
        keep = seps <= r_b + world.r0 + TAU
        if keep.any():
            return MIXED, FeatureSet("T", parent_fset.glob[keep])
        fs = FeatureSet("T", _EMPTY)
        return classify_empty_box(mx, my, parent_fset.glob, world), fs

    ntri = world.ntri
    if parent_fset.phase == "T":
        glob = parent_fset.glob
        if glob.size:
            ballkeep = K.ball_filter_tris(feat, glob, mx, my, r_b, world.r_j, TAU)
            rows, cols = np.nonzero(ballkeep)
            cand = glob[cols]
            counts = np.bincount(rows, minlength=ntri)
            off = np.zeros(ntri + 1, dtype=np.int64)
            np.cumsum(counts, out=off[1:])
        else:
            cand = _EMPTY
            off = np.zeros(ntri + 1, dtype=np.int64)
        parent_verdicts = None
    else:
        cand = parent_fset.cand
        off = parent_fset.off
        parent_verdicts = parent_fset.verdicts

    if cand.size:
        parts, poff, bnds, boff, piece_off = world.stacked_regions(rng)
        keep = K.filter_tris(feat, cand, off, mx, my, r_b, parts, poff, bnds, boff, piece_off, TAU)
        kept_pos = np.flatnonzero(keep)
        new_cand = cand[kept_pos]
        new_off = np.searchsorted(kept_pos, off).astype(np.int64)
    else:
        new_cand = _EMPTY
        new_off = np.zeros(ntri + 1, dtype=np.int64)

    verdicts = np.zeros(ntri, dtype=np.int8)
    any_stuck = False
    all_free = True
    undecided = new_cand.size > 0
    counts = np.diff(new_off)
    for j in range(ntri):
        if counts[j]:
            all_free = False
            continue
        if parent_verdicts is not None and off[j] == off[j + 1]:
            v = parent_verdicts[j]
        else:
            v = _triangle_verdict(j, mx, my, rng, world)
        verdicts[j] = v
        if v == STUCK:
            any_stuck = True
        elif v != FREE:
            all_free = False
    fs = FeatureSet("R", cand=new_cand, off=new_off, verdicts=verdicts)
    if any_stuck:
        return STUCK, fs
    if all_free and not undecided:
        return FREE, fs
    return MIXED, fs


def build_feature_set(mx, my, r_b, rng: AngularRange, parent_fset: FeatureSet, world: World) -> FeatureSet:
    """Filter the parent's feature set for a child box (classification left
    to the caller)."""
    _, fs = evaluate_box(mx, my, r_b, rng, parent_fset, world)
    return fs


def classify(mx, my, r_b, rng: AngularRange, parent_fset: FeatureSet, world: World) -> int:
    """Box verdict alone: FREE when every triangle is definitely clear,
    STUCK when some triangle is definitely buried, MIXED otherwise."""
    cls, _ = evaluate_box(mx, my, r_b, rng, parent_fset, world)
    return cls


def compose_verdicts(per_triangle: list[int]) -> int:
    """Combine per-triangle verdicts: STUCK dominates, FREE needs unanimity."""
    if any(v == STUCK for v in per_triangle):
        return STUCK
    if all(v == FREE for v in per_triangle):
        return FREE
    return MIXED
