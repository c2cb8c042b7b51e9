#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure interpreted fallback.

Runs each workload in a subprocess with POLYPLAN_PURE_NUMPY set accordingly
and reports a speedup table:

    python3 benchmarks/bench_kernels.py [--features N] [--poses N] [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, math, sys, time
import numpy as np
from polyplan import kernels as K

n_feat, n_poses, repeat = (int(v) for v in sys.argv[1:4])
rng = np.random.default_rng(0)

feat = np.zeros((n_feat, 9))
for i in range(n_feat):
    if i % 2 == 0:
        x, y = rng.uniform(0, 512, 2)
        feat[i] = [0, x, y, x, y, 1.0, 0, 0, 0]
    else:
        a = rng.uniform(0, 512, 2); b = a + rng.uniform(-40, 40, 2)
        d = b - a; L = math.hypot(*d) or 1.0
        feat[i] = [1, a[0], a[1], b[0], b[1], 0, -d[1]/L, d[0]/L, (-d[1]*a[0] + d[0]*a[1])/L]
idx = np.arange(n_feat, dtype=np.int64)

parts = np.array([
    [0.0, 1.0, 0.0, 30.0],
    [0.0, -1.0, 0.0, 10.0],
    [1.0, 0.0, 0.0, 50.0],
    [2.0, 0.0, 0.0, 20.0],
])
poff = np.array([0, 4], dtype=np.int64)
bnds = np.array([
    [0.0, 20.0, -46.0, 30.0, -40.0, 0.0],
    [0.0, 20.0, 46.0, 30.0, 40.0, 0.0],
    [1.0, 0.0, 0.0, 50.0, -0.5, 1.0],
    [1.0, 0.0, 0.0, 20.0, -0.5, 1.0],
])
boff = np.array([0, 4], dtype=np.int64)

oxs = np.array([100.0, 400.0, 400.0, 100.0]); oys = np.array([100.0, 100.0, 200.0, 200.0])
ooff = np.array([0, 4], dtype=np.int64)
rvx = rng.uniform(-40, 40, 12); rvy = rng.uniform(-40, 40, 12)
poses = np.column_stack([rng.uniform(0, 512, n_poses), rng.uniform(0, 512, n_poses), rng.uniform(0, 6.28, n_poses)])

def timeit(fn):
    fn()  # warm (and compile on the numba path)
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat

res = {
    "backend": "numba" if K.NUMBA_ACTIVE else "numpy",
    "feature_seps": timeit(lambda: K.feature_seps(feat, idx, 256.0, 256.0)),
    "region_filter": timeit(lambda: K.region_filter(feat, idx, 256.0, 256.0, 8.0, parts, poff, bnds, boff, 1, 1e-9)),
    "poses_collide": timeit(lambda: K.poses_collide(rvx, rvy, oxs, oys, ooff, poses, 60.0, 1e-9)),
}
print(json.dumps(res))
"""


def run(pure: bool, n_feat: int, n_poses: int, repeat: int) -> dict:
    env = dict(os.environ)
    env["POLYPLAN_PURE_NUMPY"] = "1" if pure else "0"
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(n_feat), str(n_poses), str(repeat)],
        env=env,
        capture_output=True,
        text=True,
    )
    if out.returncode != 0:
        raise SystemExit(out.stderr)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--features", type=int, default=2000)
    ap.add_argument("--poses", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()

    fast = run(False, args.features, args.poses, args.repeat)
    slow = run(True, args.features, args.poses, args.repeat)
    print(f"{'kernel':16s} {'numba':>12s} {'pure numpy':>12s} {'speedup':>9s}")
    for key in ("feature_seps", "region_filter", "poses_collide"):
        a, b = fast[key], slow[key]
        print(f"{key:16s} {a * 1e3:10.3f}ms {b * 1e3:10.3f}ms {b / a:8.1f}x")


if __name__ == "__main__":
    main()
