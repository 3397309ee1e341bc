"""Compare the jitted and plain-numpy contraction backends.

Times the raw matmul kernel on square unfoldings and a full min-norm solve
of a seeded instance, for each backend.  Run as::

    python benchmarks/bench_backends.py [--sizes 32,64,128] [--repeats 5]
"""

import argparse
import time

import numpy as np

from tensyl import backend, solve_min_norm
from tensyl.instances import random_consistent


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_matmul(sizes, repeats):
    rng = np.random.default_rng(0)
    print(f"{'size':>6} {'numpy (ms)':>12} {'numba (ms)':>12} {'ratio':>8}")
    for size in sizes:
        a = rng.uniform(-1, 1, (size, size))
        b = rng.uniform(-1, 1, (size, size))
        timings = {}
        for name in ("numpy", "numba"):
            backend.set_backend(name)
            backend.matmul(a, b)  # warm (and, for numba, compile)
            timings[name] = time_call(lambda: backend.matmul(a, b), repeats)
        ratio = timings["numba"] / timings["numpy"]
        print(
            f"{size:>6} {timings['numpy'] * 1e3:>12.3f} "
            f"{timings['numba'] * 1e3:>12.3f} {ratio:>8.2f}"
        )


def bench_solve(repeats):
    print(f"\n{'instance':>18} {'numpy (ms)':>12} {'numba (ms)':>12} {'ratio':>8}")
    for row, col in [((3, 3), (3, 3)), ((4, 4), (4, 3))]:
        rng = np.random.default_rng(1)
        problem, _ = random_consistent(rng, row, col, shift=2.0)
        timings = {}
        for name in ("numpy", "numba"):
            backend.set_backend(name)
            solve_min_norm(problem)  # warm
            timings[name] = time_call(lambda: solve_min_norm(problem), repeats)
        label = f"{row}x{col}"
        ratio = timings["numba"] / timings["numpy"]
        print(
            f"{label:>18} {timings['numpy'] * 1e3:>12.3f} "
            f"{timings['numba'] * 1e3:>12.3f} {ratio:>8.2f}"
        )


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--sizes", default="32,64,128,256")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    previous = backend.active_backend()
    try:
        bench_matmul(sizes, args.repeats)
        bench_solve(args.repeats)
    finally:
        backend.set_backend(previous)


if __name__ == "__main__":
    main()
