import json
import math
import os
import subprocess
import sys

import numpy as np

from polyplan import kernels as K

PROBE = r"""
import json, math
import numpy as np
from polyplan import kernels as K

rng = np.random.default_rng(1234)
feat = np.zeros((40, 9))
for i in range(40):
    if i % 2 == 0:
        x, y = rng.uniform(-50, 50, 2)
        feat[i] = [0, x, y, x, y, float(i % 4 == 0), 0, 0, 0]
    else:
        a = rng.uniform(-50, 50, 2); b = a + rng.uniform(-20, 20, 2)
        d = b - a; L = math.hypot(*d)
        feat[i] = [1, a[0], a[1], b[0], b[1], 0, -d[1]/L, d[0]/L, (-d[1]*a[0] + d[0]*a[1])/L]
idx = np.arange(40, dtype=np.int64)
seps = K.feature_seps(feat, idx, 3.0, -7.0)
parts = np.array([
    [0.0, 1.0, 0.0, 10.0],
    [1.0, 0.0, 0.0, 30.0],
    [2.0, 0.0, 0.0, 5.0],
])
poff = np.array([0, 3], dtype=np.int64)
bnds = np.array([
    [0.0, -20.0, -8.0, 10.0, -8.0, 0.0],
    [1.0, 0.0, 0.0, 30.0, 0.5, 2.0],
])
boff = np.array([0, 2], dtype=np.int64)
rsep = [K.region_sep_feature(feat, i, 1.0, 2.0, parts, poff, bnds, boff, 1, 1e-9) for i in range(40)]
oxs = np.array([0.0, 40.0, 40.0, 0.0]); oys = np.array([0.0, 0.0, 40.0, 40.0])
ooff = np.array([0, 4], dtype=np.int64)
poses = np.column_stack([rng.uniform(-30, 70, 25), rng.uniform(-30, 70, 25), rng.uniform(0, 6.28, 25)])
col = K.poses_collide(np.array([8.0, -8.0, 0.0]), np.array([-5.0, -5.0, 9.0]), oxs, oys, ooff, poses, 10.0, 1e-9)
print(json.dumps({
    "numba": bool(K.NUMBA_ACTIVE),
    "seps": seps.tolist(),
    "rsep": rsep,
    "col": [bool(c) for c in col],
}))
"""


def _run_probe(pure: bool):
    env = dict(os.environ)
    env["POLYPLAN_PURE_NUMPY"] = "1" if pure else "0"
    out = subprocess.run(
        [sys.executable, "-c", PROBE], env=env, capture_output=True, text=True, timeout=600
    )
    assert out.returncode == 0, out.stderr
    return json.loads(out.stdout)


def test_backends_agree_exactly():
    """The compiled path and the interpreted fallback return identical
    numbers (same source, fastmath off)."""
    a = _run_probe(pure=False)
    b = _run_probe(pure=True)
    assert a["numba"] is True
    assert b["numba"] is False
    assert a["seps"] == b["seps"]
    assert a["rsep"] == b["rsep"]
    assert a["col"] == b["col"]


class TestSegArcDistance:
    def _brute(self, a, b, c, r, a0, span, n=4000):
        t = np.linspace(0, 1, n)
        px = a[0] + t * (b[0] - a[0])
        py = a[1] + t * (b[1] - a[1])
        phi = a0 + np.linspace(0, span, n)
        qx = c[0] + r * np.cos(phi)
        qy = c[1] + r * np.sin(phi)
        return float(np.min(np.hypot(px[:, None] - qx[None, :], py[:, None] - qy[None, :])))

    def test_random_cases(self):
        rng = np.random.default_rng(7)
        for _ in range(60):
            a = rng.uniform(-5, 5, 2)
            b = rng.uniform(-5, 5, 2)
            if math.hypot(*(b - a)) < 0.1:
                continue
            c = rng.uniform(-3, 3, 2)
            r = rng.uniform(0.5, 3)
            a0 = rng.uniform(0, 2 * math.pi)
            span = rng.uniform(0.2, 2 * math.pi)
            got = K._seg_arc_dist(a[0], a[1], b[0], b[1], c[0], c[1], r, a0, span)
            want = self._brute(a, b, c, r, a0, span)
            assert got <= want + 1e-9
            assert got >= want - 5e-3  # brute force is only grid-accurate


class TestPointInPolygon:
    def test_square(self):
        xs = np.array([0.0, 4.0, 4.0, 0.0])
        ys = np.array([0.0, 0.0, 4.0, 4.0])
        assert K.point_in_polygon(xs, ys, 4, 2, 2, 1e-9) == 1
        assert K.point_in_polygon(xs, ys, 4, 5, 2, 1e-9) == -1
        assert K.point_in_polygon(xs, ys, 4, 4, 2, 1e-9) == 0
        assert K.point_in_polygon(xs, ys, 4, 0, 0, 1e-9) == 0

    def test_concave(self):
        xs = np.array([0.0, 6.0, 6.0, 3.0, 3.0, 0.0])
        ys = np.array([0.0, 0.0, 2.0, 2.0, 6.0, 6.0])
        assert K.point_in_polygon(xs, ys, 6, 5, 5, 1e-9) == -1
        assert K.point_in_polygon(xs, ys, 6, 1, 5, 1e-9) == 1
