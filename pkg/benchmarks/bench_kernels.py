"""Time the numba-jitted kernels against their pure-numpy twins.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat 7]

Each kernel runs on problem sizes similar to the default pipeline; the
report shows the best wall time per backend and the speedup. The jitted
variants are warmed up once before timing so compilation is excluded.
"""

import argparse
import time

import numpy as np

from pa1d import kernels


def best_of(fn, args, repeat: int) -> float:
    fn(*args)  # warm-up: JIT compile / cache touch
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_leapfrog(repeat: int):
    rng = np.random.default_rng(0)
    n, steps = 801, 1200
    u_hi = np.zeros(n)
    u_mid = np.zeros(n)
    bm = rng.standard_normal(steps + 1)
    bp = rng.standard_normal(steps + 1)
    args = (u_hi, u_mid, bm, bp, 1.0)
    return (
        "leapfrog_backward (801 nodes x 1200 steps)",
        best_of(kernels._leapfrog_backward_numpy, args, repeat),
        best_of(kernels.leapfrog_backward, args, repeat),
    )


def bench_fold(repeat: int):
    rng = np.random.default_rng(1)
    xi = rng.uniform(-50.0, 50.0, size=2_000_000)
    points = np.empty_like(xi)
    signs = np.empty_like(xi)
    args = (xi, 3.0, points, signs)
    return (
        "fold_images (2e6 points)",
        best_of(kernels._fold_images_numpy, args, repeat),
        best_of(kernels.fold_images_into, args, repeat),
    )


def bench_mode_sum(repeat: int):
    rng = np.random.default_rng(2)
    x = np.linspace(-3.0, 3.0, 20_001)
    coeffs = rng.standard_normal(400)
    args = (x, coeffs, 3.0)
    return (
        "mode_sum (20001 points x 400 modes)",
        best_of(kernels._mode_sum_numpy, args, repeat),
        best_of(kernels.mode_sum, args, repeat),
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=7, help="timed runs per kernel")
    args = parser.parse_args()

    print(f"active backend: {kernels.backend()}")
    if not kernels.HAVE_NUMBA:
        print("numba is unavailable or disabled; the dispatch column repeats numpy")
    print()
    header = f"{'kernel':<45} {'numpy':>10} {'dispatch':>10} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for bench in (bench_leapfrog, bench_fold, bench_mode_sum):
        name, t_numpy, t_active = bench(args.repeat)
        speedup = t_numpy / t_active if t_active > 0 else float("inf")
        print(f"{name:<45} {t_numpy * 1e3:>8.3f}ms {t_active * 1e3:>8.3f}ms {speedup:>8.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
