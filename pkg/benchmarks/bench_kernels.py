"""Compare the numba and numpy walk kernels on identical inputs.

Usage: python3 benchmarks/bench_kernels.py [--trials T] [--steps N]
"""
import argparse
import time

import numpy as np

from coxwalk._kernels import HAVE_NUMBA, VARIANTS, run_walks
from coxwalk.roots import build_root_system
from coxwalk.walker import tables


def timed(fn, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def bench(tag, variant, trials, steps):
    t = tables(build_root_system(tag))
    U = np.random.Generator(np.random.PCG64(7)).random((trials, steps))
    code = VARIANTS[variant]
    t_np, (W1, L1, _, _) = timed(lambda: run_walks(t, code, U, backend="numpy"))
    line = f"{tag:3s} {variant:21s} numpy {t_np * 1e3:9.1f} ms"
    if HAVE_NUMBA:
        run_walks(t, code, U[:2, :2], backend="numba")  # compile
        t_nb, (W2, L2, _, _) = timed(lambda: run_walks(t, code, U, backend="numba"))
        same = np.array_equal(W1, W2) and np.array_equal(L1, L2)
        line += (f"   numba {t_nb * 1e3:9.1f} ms   speedup {t_np / t_nb:6.1f}x"
                 f"   identical={same}")
    print(line)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--steps", type=int, default=400)
    args = p.parse_args()
    print(f"trials={args.trials} steps={args.steps} numba={HAVE_NUMBA}")
    for tag in ("A2", "B3", "A4"):
        for variant in ("free", "delayed", "grassmannian"):
            bench(tag, variant, args.trials, args.steps)


if __name__ == "__main__":
    main()
