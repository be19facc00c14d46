"""Compare the numba and numpy backends of the finite-oracle kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json]

Both backends are called in the same process; the numba kernels are warmed
up once before timing so compilation is not counted.
"""

from __future__ import annotations

import argparse
import json
import time

import numpy as np

from cuboid_cech import _kernels
from cuboid_cech.oracle import FiniteModel, coboundary_matrix


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def bench_rank(repeat):
    rng = np.random.default_rng(0)
    cases = []
    for sizes, k in (((3, 3, 3), 0), ((3, 3, 3), 1), ((4, 4, 4), 1)):
        mat, _ = coboundary_matrix(FiniteModel(sizes), k)
        cases.append((f"coboundary d^{k} on {sizes}", mat))
    for rows, cols in ((256, 256), (1024, 1024)):
        cases.append((f"random {rows}x{cols}", rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)))
    out = []
    for label, mat in cases:
        packed = _kernels.pack_rows(mat)
        cols = mat.shape[1]
        row = {"kernel": "gf2_rank", "case": label}
        for backend in ("numpy", "numba"):
            if backend == "numba" and _kernels.njit is None:
                continue
            _kernels.gf2_rank(packed, cols, backend)
            t, r = _best(lambda: _kernels.gf2_rank(packed, cols, backend), repeat)
            row[backend] = t
            row["rank"] = r
        out.append(row)
    return out


def bench_min_assign(repeat):
    rng = np.random.default_rng(1)
    out = []
    for npts, length in ((10_000, 3), (200_000, 4), (1_000_000, 5)):
        sizes = np.full(length, 8, dtype=np.int64)
        pts = rng.integers(0, 9, size=(npts, length), dtype=np.int64)
        row = {"kernel": "min_assign", "case": f"{npts} points, {length} axes"}
        results = {}
        for backend in ("numpy", "numba"):
            if backend == "numba" and _kernels.njit is None:
                continue
            _kernels.min_assign(pts, sizes, backend)
            t, r = _best(lambda: _kernels.min_assign(pts, sizes, backend), repeat)
            row[backend] = t
            results[backend] = r
        if len(results) == 2:
            row["agree"] = bool(np.array_equal(results["numpy"], results["numba"]))
        out.append(row)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = bench_rank(args.repeat) + bench_min_assign(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'kernel':<11} {'case':<34} {'numpy (ms)':>11} {'numba (ms)':>11} {'speedup':>8}")
    for r in rows:
        npy, nba = r.get("numpy"), r.get("numba")
        sp = f"{npy / nba:7.1f}x" if npy and nba else "     n/a"
        nba_s = f"{nba * 1e3:11.3f}" if nba else f"{'n/a':>11}"
        print(f"{r['kernel']:<11} {r['case']:<34} {npy * 1e3:11.3f} {nba_s} {sp}")


if __name__ == "__main__":
    main()
