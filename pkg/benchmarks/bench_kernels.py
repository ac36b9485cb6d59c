#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-numpy fallback.

Times the three hot paths on realistic workloads: bulk ccw steps, the
star-inscription bisection over a basepoint grid, and the field-of-two
reduction of a Rips boundary matrix.  Run from an installed tree:

    python benchmarks/bench_kernels.py [--grid 10000] [--points 48]
"""

import argparse
import math
import time

import numpy as np

from polyrips import geometry, oracle
from polyrips._kernels import pure

try:
    from polyrips._kernels import _speedups
except ImportError:
    _speedups = None


def timeit(fn, repeat=3):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def boundary_workload(points):
    pts = [i / points for i in range(points)]
    emb = np.array([geometry.embed(6, t) for t in pts])
    diff = emb[:, None, :] - emb[None, :, :]
    dist = np.sqrt((diff**2).sum(-1))
    K = oracle.vr_complex(dist, 1.6, "closed", max_dim=3)
    faces, cofaces = K.simplices[2], K.simplices[3]
    offs, rows = oracle._boundary_csc(faces, cofaces)
    return offs, rows, len(faces), len(cofaces)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--grid", type=int, default=10_000)
    ap.add_argument("--points", type=int, default=48)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    n = 15
    rn = geometry.cyclicity_threshold(n)
    ts = rng.random(args.grid)
    rs = rng.uniform(0.1, rn - 1e-6, args.grid)
    offs, rows, n_rows, n_cols = boundary_workload(args.points)

    workloads = [
        (
            f"step_many            ({args.grid} steps, n={n})",
            lambda k: k.step_many(n, ts, rs),
        ),
        (
            f"inscribe_many        ({args.grid} basepoints, 5-point stars)",
            lambda k: k.inscribe_many(n, 5, 2.0, ts, rn),
        ),
        (
            f"reduce_lows          ({n_cols} columns x {n_rows} rows)",
            lambda k: k.reduce_lows(offs, rows, n_rows),
        ),
    ]

    print(f"{'workload':55s} {'python':>9s} {'c':>9s} {'speedup':>8s}")
    for name, fn in workloads:
        t_py = timeit(lambda: fn(pure))
        if _speedups is None:
            print(f"{name:55s} {t_py:8.3f}s {'n/a':>9s} {'n/a':>8s}")
            continue
        t_c = timeit(lambda: fn(_speedups))
        print(f"{name:55s} {t_py:8.3f}s {t_c:8.3f}s {t_py / t_c:7.1f}x")

    if _speedups is None:
        print("\ncompiled kernel not built; showing fallback timings only")


if __name__ == "__main__":
    main()
