"""Benchmark the JIT-compiled assignment kernel against the pure-Python one.

Run:  python3 bench/bench_assignment.py [--sizes 8 16 32 64] [--repeats 20]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from beliefgraph.assignment import lapjv_jit, lapjv_python


def time_kernel(kernel, matrices, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        for m in matrices:
            kernel(m)
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    parser.add_argument("--repeats", type=int, default=20)
    parser.add_argument("--batch", type=int, default=25,
                        help="matrices per timed batch")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    print(f"{'n':>5} {'python (ms)':>14} {'numba (ms)':>14} {'speedup':>9}")
    for n in args.sizes:
        matrices = [rng.random((n, n)) for _ in range(args.batch)]
        if lapjv_jit is not None:
            lapjv_jit(matrices[0])  # compile outside the timed region
        py = time_kernel(lapjv_python, matrices, args.repeats)
        if lapjv_jit is None:
            print(f"{n:>5} {1000 * py:>14.3f} {'n/a':>14} {'n/a':>9}")
            continue
        jit = time_kernel(lapjv_jit, matrices, args.repeats)
        print(f"{n:>5} {1000 * py:>14.3f} {1000 * jit:>14.3f} {py / jit:>8.1f}x")


if __name__ == "__main__":
    main()
