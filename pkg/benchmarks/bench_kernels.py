#!/usr/bin/env python3
"""Benchmark the geometry kernels: numba @njit loops vs pure numpy.

Runs the front-chain packer and the enclosing-circle kernel over random
workloads on each available path and prints a timing table. The numba
path is skipped cleanly when numba is not importable or disabled via
AVYVIEW_NO_NUMBA=1.

Usage:
    python3 benchmarks/bench_kernels.py [--sizes 10,50,200,500] [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from avyview import _kernels


def _time(fn, *args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_packing(sizes, repeats):
    rng = np.random.default_rng(0)
    print(f"{'n':>6} {'numba loops':>14} {'pure numpy':>14} {'speedup':>9}")
    for n in sizes:
        radii = np.ascontiguousarray(rng.uniform(0.2, 5.0, n))
        row = [f"{n:>6}"]
        t_numba = None
        if _kernels.USING_NUMBA:
            _kernels._pack_front_chain_loops(radii)  # compile outside the timer
            t_numba = _time(_kernels._pack_front_chain_loops, radii, repeats=repeats)
            row.append(f"{t_numba * 1e3:>12.2f}ms")
        else:
            row.append(f"{'(off)':>14}")
        t_numpy = _time(_kernels._pack_front_chain_numpy, radii, repeats=repeats)
        row.append(f"{t_numpy * 1e3:>12.2f}ms")
        row.append(f"{t_numpy / t_numba:>8.1f}x" if t_numba else f"{'-':>9}")
        print(" ".join(row))

        got_numpy = _kernels._pack_front_chain_numpy(radii)
        if _kernels.USING_NUMBA:
            got_numba = _kernels._pack_front_chain_loops(radii)
            assert np.array_equal(got_numba, got_numpy), "paths diverged"


def bench_enclose(sizes, repeats):
    rng = np.random.default_rng(1)
    print(f"{'n':>6} {'numba':>14} {'python':>14} {'speedup':>9}")
    for n in sizes:
        xs = rng.uniform(-50, 50, n)
        ys = rng.uniform(-50, 50, n)
        rs = rng.uniform(0.1, 4.0, n)
        row = [f"{n:>6}"]
        t_numba = None
        if _kernels.USING_NUMBA:
            _kernels.enclose_circles(xs, ys, rs)
            t_numba = _time(_kernels.enclose_circles, xs, ys, rs, repeats=repeats)
            row.append(f"{t_numba * 1e6:>12.1f}us")
            plain = _kernels.enclose_circles.py_func
        else:
            row.append(f"{'(off)':>14}")
            plain = _kernels.enclose_circles
        t_plain = _time(plain, xs, ys, rs, repeats=repeats)
        row.append(f"{t_plain * 1e6:>12.1f}us")
        row.append(f"{t_plain / t_numba:>8.1f}x" if t_numba else f"{'-':>9}")
        print(" ".join(row))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="10,50,200,500")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"numba path: {'ON' if _kernels.USING_NUMBA else 'OFF (numpy fallback)'}")
    print("\nfront-chain circle packing")
    bench_packing(sizes, args.repeats)
    print("\nsmallest enclosing circle")
    bench_enclose(sizes, args.repeats)


if __name__ == "__main__":
    main()
