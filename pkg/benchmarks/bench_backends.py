#!/usr/bin/env python3
"""Timing comparison of the compiled and numpy sweep kernels.

Usage: python benchmarks/bench_backends.py [--runs 500] [--height 500]
"""

import argparse
import time

import numpy as np

from rmfperc import available_backends
from rmfperc._kernels import LATTICE_ALT, LATTICE_SQUARE, MODE_RMF


def time_call(fn, *args, repeat=3, **kwargs):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args, **kwargs)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--runs", type=int, default=500)
    ap.add_argument("--height", type=int, default=500)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    seeds = np.arange(1, args.runs + 1, dtype=np.uint64)
    backends = available_backends()
    print(f"backends: {sorted(backends)}   runs={args.runs} height={args.height}")

    cases = [
        ("l2      c=0.32", "lattice", (LATTICE_SQUARE, seeds, args.height, 0.32)),
        ("l2alt   c=0.21", "lattice", (LATTICE_ALT, seeds, args.height, 0.21)),
        ("rtree:2 c=0.21", "tree", (2, seeds, args.height, 0.21)),
        ("rtree:3 c=0.13", "tree", (3, seeds, args.height, 0.13)),
    ]
    header = f"{'case':<16}" + "".join(f"{n:>12}" for n in sorted(backends)) + f"{'speedup':>10}"
    print(header)
    for label, shape, a in cases:
        times = {}
        for name in sorted(backends):
            kern = backends[name]
            fn = kern.lattice_sweep if shape == "lattice" else kern.tree_sweep
            kwargs = {"mode": MODE_RMF}
            if shape == "tree":
                kwargs["guard"] = 100_000
            times[name] = time_call(fn, *a, repeat=args.repeat, **kwargs)
        row = f"{label:<16}" + "".join(f"{times[n]:>11.3f}s" for n in sorted(backends))
        if "cython" in times and "numpy" in times:
            row += f"{times['numpy'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
