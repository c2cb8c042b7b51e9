"""Subdivision search over SE(2): split boxes, classify, connect FREE leaves.

The configuration space is searched with a translation-first discipline:
boxes split into four translational children while the square is wider than
eps, then split the angular range in half until it drops below eps/r0 (so a
box is "small" when neither split applies).  Small MIXED boxes are
discarded.  FREE leaves enter a union-find structure keyed by box adjacency;
the search stops with a path as soon as the leaves containing the start and
goal are FREE and connected, and with NO_PATH when no MIXED box remains.
"""

from __future__ import annotations

import heapq
import math
import random
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels as K
from .decompose import RobotPolygon
from .geom import TAU, TWO_PI, AngularRange
from .predicates import (
    CLASS_NAMES,
    FREE,
    MIXED,
    STUCK,
    Environment,
    FeatureSet,
    World,
    evaluate_box,
    exact_collides,
)

Configuration = tuple[float, float, float]  # x, y, theta (radians)


class Box:
    """One subdivision cell: translational square times angular range."""

    __slots__ = (
        "cx", "cy", "hw", "rng", "cls", "fset", "children", "uf", "id", "active", "nbrs",
    )

    def __init__(self, cx, cy, hw, rng: AngularRange):
        self.cx = cx
        self.cy = cy
        self.hw = hw
        self.rng = rng
        self.cls = MIXED
        self.fset: FeatureSet | None = None
        self.children: list["Box"] | None = None
        self.uf = -1
        self.id = -1
        self.active = False
        self.nbrs: list["Box"] = []

    @property
    def r_b(self) -> float:
        return self.hw * math.sqrt(2.0)

    @property
    def phase(self) -> str:
        return "T" if self.rng.full else "R"

    def width_t(self) -> float:
        return 2.0 * self.hw

    def contains_xy(self, x, y) -> bool:
        return abs(x - self.cx) <= self.hw + TAU and abs(y - self.cy) <= self.hw + TAU

    def contains(self, cfg: Configuration) -> bool:
        return self.contains_xy(cfg[0], cfg[1]) and self.rng.contains(cfg[2])

    def __repr__(self):
        return (
            f"Box(({self.cx:.3f},{self.cy:.3f})±{self.hw:.3f}, "
            f"[{self.rng.lo:.3f},{self.rng.hi:.3f}{'*' if self.rng.full else ''}], "
            f"{CLASS_NAMES.get(self.cls, '?')})"
        )


def epsilon_small(box: Box, eps: float, r0: float) -> bool:
    """Both widths at or below resolution: square width <= eps and angular
    width <= eps/r0."""
    slack = 1.0 + 1e-12
    return box.width_t() <= eps * slack and box.rng.width() <= (eps / r0) * slack


def split(box: Box, eps: float, r0: float) -> list[Box]:
    """Four translational children while the square is wide, else two angular
    children.  Splitting a resolution-small box is a contract violation."""
    if epsilon_small(box, eps, r0):
        raise ValueError("cannot split a resolution-small box")
    if box.width_t() > eps * (1.0 + 1e-12):
        h = box.hw * 0.5
        kids = [
            Box(box.cx - h, box.cy - h, h, box.rng),
            Box(box.cx + h, box.cy - h, h, box.rng),
            Box(box.cx - h, box.cy + h, h, box.rng),
            Box(box.cx + h, box.cy + h, h, box.rng),
        ]
    else:
        r1, r2 = box.rng.halves()
        kids = [
            Box(box.cx, box.cy, box.hw, r1),
            Box(box.cx, box.cy, box.hw, r2),
        ]
    box.children = kids
    return kids


def adjacency(b1: Box, b2: Box, tol: float = 1e-9) -> bool:
    """Leaves are adjacent when their squares share a boundary segment of
    positive length (or coincide, for angular siblings) and their angular
    ranges overlap or meet at an endpoint, including across the 0/2pi seam."""
    if b1 is b2:
        return False
    dx = abs(b1.cx - b2.cx)
    dy = abs(b1.cy - b2.cy)
    if dx <= tol and dy <= tol and abs(b1.hw - b2.hw) <= tol:
        return b1.rng.touches(b2.rng)
    xo = min(b1.cx + b1.hw, b2.cx + b2.hw) - max(b1.cx - b1.hw, b2.cx - b2.hw)
    yo = min(b1.cy + b1.hw, b2.cy + b2.hw) - max(b1.cy - b1.hw, b2.cy - b2.hw)
    span = b1.hw + b2.hw
    side = (abs(dx - span) <= tol and yo > tol) or (abs(dy - span) <= tol and xo > tol)
    if not side:
        return False
    return b1.rng.touches(b2.rng)


class UnionFind:
    def __init__(self):
        self.parent: list[int] = []

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass
class PlanResult:
    status: str  # "PATH" | "NO_PATH"
    path: list[Configuration] | None = None
    detail: str = ""
    stats: dict = field(default_factory=dict)
    leaves: list | None = None


def _angular_overlap_mid(r1: AngularRange, r2: AngularRange) -> float:
    """A shared angle of two touching ranges (midpoint of the overlap)."""
    if r1.full and r2.full:
        return 0.0
    if r1.full:
        return r2.mid()
    if r2.full:
        return r1.mid()
    a0, a1 = r1.lo, r1.lo + r1.width()
    b0, b1 = r2.lo, r2.lo + r2.width()
    for shift in (-TWO_PI, 0.0, TWO_PI):
        lo = max(a0, b0 + shift)
        hi = min(a1, b1 + shift)
        if hi >= lo - TAU:
            return 0.5 * (lo + hi) % TWO_PI
    raise ValueError("ranges do not touch")


def _face_waypoint(b1: Box, b2: Box) -> Configuration:
    """A configuration on the shared boundary of two adjacent leaves."""
    theta = _angular_overlap_mid(b1.rng, b2.rng)
    dx = abs(b1.cx - b2.cx)
    dy = abs(b1.cy - b2.cy)
    if dx <= 1e-9 and dy <= 1e-9:
        return (b1.cx, b1.cy, theta)
    xo0 = max(b1.cx - b1.hw, b2.cx - b2.hw)
    xo1 = min(b1.cx + b1.hw, b2.cx + b2.hw)
    yo0 = max(b1.cy - b1.hw, b2.cy - b2.hw)
    yo1 = min(b1.cy + b1.hw, b2.cy + b2.hw)
    return (0.5 * (xo0 + xo1), 0.5 * (yo0 + yo1), theta)


class Planner:
    """One planning run; see :func:`plan` for the one-call interface."""

    def __init__(
        self,
        env: Environment,
        robot: RobotPolygon,
        eps: float,
        strategy: str = "balanced",
        seed: int = 0,
        world: World | None = None,
        exhaustive: bool = False,
    ):
        if eps <= 0:
            raise ValueError("eps must be positive")
        self.env = env
        self.robot = robot
        self.eps = float(eps)
        self.strategy = strategy
        # exhaustive: split every MIXED box above resolution, not only the
        # ones on the free-space frontier (same verdicts, more work)
        self.exhaustive = exhaustive
        self.rand = random.Random(seed)
        self.world = world if world is not None else World(env, robot)
        x0, y0, x1, y1 = env.bbox
        half = 0.5 * max(x1 - x0, y1 - y0)
        self.root = Box(0.5 * (x0 + x1), 0.5 * (y0 + y1), half, AngularRange.full_circle())
        self.root.fset = FeatureSet.root(self.world)
        self.uf = UnionFind()
        self.free_leaves: list[Box] = []
        self.adj: list[list[int]] = []
        self.counts = {FREE: 0, STUCK: 0, MIXED: 0}
        self.discarded = 0
        self.created = 1
        self.popped = 0
        self._seq = 0
        self._queue: list = []
        self.start: Configuration | None = None
        self.goal: Configuration | None = None

    # -- queue ------------------------------------------------------------

    def _depth(self, box: Box) -> float:
        d = math.log2(self.root.hw / max(box.hw, 1e-12))
        if not box.rng.full:
            d += math.log2(TWO_PI / max(box.rng.width(), 1e-12))
        return d

    def _priority(self, box: Box):
        if self.strategy == "balanced":
            # coarse-to-fine along the start-goal corridor: ellipse focus plus
            # a one-box-width penalty per subdivision level, so cheap coarse
            # boxes are tried before anyone drills toward resolution
            d = math.hypot(box.cx - self.start[0], box.cy - self.start[1]) + math.hypot(
                box.cx - self.goal[0], box.cy - self.goal[1]
            )
            return d + self.root.hw * self._depth(box)
        if self.strategy == "greedy":
            return math.hypot(box.cx - self.goal[0], box.cy - self.goal[1])
        if self.strategy == "bfs":
            return float(self._seq)
        if self.strategy == "dfs":
            return -float(self._seq)
        if self.strategy == "random":
            return self.rand.random()
        raise ValueError(f"unknown strategy: {self.strategy}")

    def _push(self, box: Box):
        self._seq += 1
        heapq.heappush(self._queue, (self._priority(box), self._seq, box))

    # -- free-leaf bookkeeping ---------------------------------------------

    @staticmethod
    def _split_neighbor_lists(box: Box):
        """Rewire the leaf-neighbor graph after a split: every neighbor of the
        parent swaps the parent for its adjacent children, and siblings link
        among themselves."""
        kids = box.children
        for nb in box.nbrs:
            lst = nb.nbrs
            for i, entry in enumerate(lst):
                if entry is box:
                    lst[i] = lst[-1]
                    lst.pop()
                    break
            for ch in kids:
                if adjacency(nb, ch):
                    nb.nbrs.append(ch)
                    ch.nbrs.append(nb)
        for i in range(len(kids)):
            for k in range(i + 1, len(kids)):
                if adjacency(kids[i], kids[k]):
                    kids[i].nbrs.append(kids[k])
                    kids[k].nbrs.append(kids[i])
        box.nbrs = []

    def _insert_free(self, box: Box):
        """Register a FREE leaf: union it with adjacent FREE leaves and wake
        up adjacent sleeping MIXED leaves (the frontier grows)."""
        box.uf = self.uf.make()
        box.id = len(self.free_leaves)
        self.free_leaves.append(box)
        self.adj.append([])
        for nb in box.nbrs:
            if nb.cls == FREE:
                if nb.uf < 0:
                    continue  # sibling classified but not yet inserted; it links back later
                self.uf.union(box.uf, nb.uf)
                self.adj[box.id].append(nb.id)
                self.adj[nb.id].append(box.id)
            elif (
                nb.cls == MIXED
                and not nb.active
                and nb.children is None
                and not epsilon_small(nb, self.eps, self.world.r0)
            ):
                self._activate(nb)

    def _activate(self, box: Box):
        if not box.active:
            box.active = True
            self._push(box)

    def locate(self, cfg: Configuration) -> Box:
        node = self.root
        while node.children is not None:
            nxt = None
            for ch in node.children:
                if ch.contains(cfg):
                    nxt = ch
                    break
            if nxt is None:
                nxt = min(
                    node.children,
                    key=lambda ch: max(abs(cfg[0] - ch.cx) - ch.hw, abs(cfg[1] - ch.cy) - ch.hw),
                )
            node = nxt
        return node

    # -- main loop ----------------------------------------------------------

    def plan(self, alpha: Configuration, beta: Configuration, collect_leaves: bool = False) -> PlanResult:
        t_start = time.perf_counter()
        self.start = alpha
        self.goal = beta
        stats_base = {
            "eps": self.eps,
            "r0": self.world.r0,
            "triangles": self.world.ntri,
            "strategy": self.strategy,
        }

        for cfg, which in ((alpha, "start"), (beta, "goal")):
            x0, y0, x1, y1 = self.env.bbox
            if not (x0 - TAU <= cfg[0] <= x1 + TAU and y0 - TAU <= cfg[1] <= y1 + TAU):
                return self._result("NO_PATH", None, f"{which}_outside_bbox", t_start, stats_base, collect_leaves)
            if exact_collides(self.robot, cfg, self.env):
                return self._result("NO_PATH", None, f"{which}_collides", t_start, stats_base, collect_leaves)

        cls, fset = evaluate_box(
            self.root.cx, self.root.cy, self.root.r_b, self.root.rng, self.root.fset, self.world
        )
        self.root.cls = cls
        self.root.fset = fset
        if cls == FREE:
            self._insert_free(self.root)
            self.counts[FREE] += 1
        elif cls == STUCK:
            self.counts[STUCK] += 1
            return self._result("NO_PATH", None, "exhausted", t_start, stats_base, collect_leaves)
        else:
            self._activate(self.root)

        fresh_free = True
        while True:
            if fresh_free:
                done = self._connected(alpha, beta)
                if done is not None:
                    path = self._extract_path(alpha, beta, done[0], done[1])
                    return self._result("PATH", path, "", t_start, stats_base, collect_leaves)
                fresh_free = False
            if not self._queue:
                return self._result("NO_PATH", None, "exhausted", t_start, stats_base, collect_leaves)
            _, _, box = heapq.heappop(self._queue)
            self.popped += 1
            kids = split(box, self.eps, self.world.r0)
            self._split_neighbor_lists(box)
            for child in kids:
                self.created += 1
                child.cls, child.fset = evaluate_box(
                    child.cx, child.cy, child.r_b, child.rng, box.fset, self.world
                )
            for child in kids:
                if child.cls == FREE:
                    self.counts[FREE] += 1
                    self._insert_free(child)
                    fresh_free = True
                elif child.cls == STUCK:
                    self.counts[STUCK] += 1
                elif epsilon_small(child, self.eps, self.world.r0):
                    self.discarded += 1
                else:
                    # the frontier discipline: split only boxes that touch
                    # free space or hold an endpoint; others sleep until the
                    # free region reaches them
                    if self.exhaustive or child.contains(alpha) or child.contains(beta):
                        self._activate(child)
                    else:
                        for nb in child.nbrs:
                            if nb.cls == FREE and nb.children is None:
                                self._activate(child)
                                break
            box.fset = None  # children own the filtered sets now

    def _connected(self, alpha, beta):
        la = self.locate(alpha)
        lb = self.locate(beta)
        if la.cls == FREE and lb.cls == FREE and self.uf.find(la.uf) == self.uf.find(lb.uf):
            return la, lb
        return None

    def _extract_path(self, alpha, beta, la: Box, lb: Box) -> list[Configuration]:
        """Breadth-first channel through adjacent FREE leaves, emitting leaf
        centers joined by shared-face waypoints."""
        prev = {la.id: -1}
        order = [la.id]
        qi = 0
        while qi < len(order):
            cur = order[qi]
            qi += 1
            if cur == lb.id:
                break
            for nb in self.adj[cur]:
                if nb not in prev:
                    prev[nb] = cur
                    order.append(nb)
        if lb.id not in prev:
            raise AssertionError("union-find and adjacency graph disagree")
        chain_ids = []
        cur = lb.id
        while cur != -1:
            chain_ids.append(cur)
            cur = prev[cur]
        chain = [self.free_leaves[i] for i in reversed(chain_ids)]

        path: list[Configuration] = [tuple(map(float, alpha))]

        def center_cfg(box: Box, prev_theta: float) -> Configuration:
            theta = prev_theta if box.rng.full else box.rng.mid()
            return (box.cx, box.cy, theta)

        path.append(center_cfg(chain[0], alpha[2]))
        for i in range(1, len(chain)):
            w = _face_waypoint(chain[i - 1], chain[i])
            if chain[i - 1].rng.full and chain[i].rng.full:
                w = (w[0], w[1], path[-1][2])
            path.append(w)
            path.append(center_cfg(chain[i], w[2]))
        path.append(tuple(map(float, beta)))
        dedup: list[Configuration] = []
        for cfg in path:
            if not dedup or max(
                abs(cfg[0] - dedup[-1][0]), abs(cfg[1] - dedup[-1][1]), abs(cfg[2] - dedup[-1][2])
            ) > 1e-12:
                dedup.append(cfg)
        return dedup

    def _result(self, status, path, detail, t_start, stats_base, collect_leaves) -> PlanResult:
        stats = dict(stats_base)
        stats.update(
            boxes_created=self.created,
            boxes_popped=self.popped,
            free_leaves=self.counts[FREE],
            stuck_leaves=self.counts[STUCK],
            mixed_discarded=self.discarded,
            wall_time=time.perf_counter() - t_start,
            regions_built=self.world.stats["regions_built"],
            empty_side_disagreements=self.world.stats["empty_side_disagreements"],
        )
        leaves = self._collect_leaves() if collect_leaves else None
        return PlanResult(status, path, detail, stats, leaves)

    def _collect_leaves(self, cap: int = 50000) -> list:
        out = []
        stack = [self.root]
        while stack and len(out) < cap:
            node = stack.pop()
            if node.children is not None:
                stack.extend(node.children)
            else:
                counts = node.fset.per_counts() if node.fset is not None else []
                out.append(
                    (
                        node.cx - node.hw,
                        node.cy - node.hw,
                        node.cx + node.hw,
                        node.cy + node.hw,
                        node.rng.lo,
                        node.rng.hi if not node.rng.full else TWO_PI,
                        CLASS_NAMES.get(node.cls, "?"),
                        counts,
                    )
                )
        return out


def plan(
    env: Environment,
    robot: RobotPolygon,
    alpha: Configuration,
    beta: Configuration,
    eps: float,
    strategy: str = "balanced",
    seed: int = 0,
    collect_leaves: bool = False,
    world: World | None = None,
    exhaustive: bool = False,
) -> PlanResult:
    """Plan a path for the robot from alpha to beta at resolution eps."""
    p = Planner(env, robot, eps, strategy=strategy, seed=seed, world=world, exhaustive=exhaustive)
    return p.plan(alpha, beta, collect_leaves=collect_leaves)


def hausdorff_bound_check(box: Box, robot: RobotPolygon, samples: int = 24, seed: int = 0) -> float:
    """Largest footprint displacement over sampled configuration pairs in the
    box (max vertex displacement bounds the footprint Hausdorff distance)."""
    lv = robot.local_vertices()
    rvx = np.ascontiguousarray(lv[:, 0])
    rvy = np.ascontiguousarray(lv[:, 1])
    rnd = random.Random(seed)
    lo = box.rng.lo
    w = box.rng.width()
    cfgs = []
    for sx in (-1.0, 1.0):
        for sy in (-1.0, 1.0):
            for st in (0.0, 1.0):
                cfgs.append((box.cx + sx * box.hw, box.cy + sy * box.hw, lo + st * w))
    for _ in range(samples):
        cfgs.append(
            (
                box.cx + (2.0 * rnd.random() - 1.0) * box.hw,
                box.cy + (2.0 * rnd.random() - 1.0) * box.hw,
                lo + rnd.random() * w,
            )
        )
    best = 0.0
    for i in range(len(cfgs)):
        for j in range(i + 1, len(cfgs)):
            a, b = cfgs[i], cfgs[j]
            best = max(best, K.max_vertex_displacement(rvx, rvy, a[0], a[1], a[2], b[0], b[1], b[2]))
    return best
