#!/usr/bin/env python3
"""Benchmark the compiled mode-evaluation kernel against the numpy fallback.

The kernel dominates basis-heavy workloads (orthonormality scans, modal
decomposition), so both a single-mode microbenchmark and a full 28-mode
window sweep are timed.  Usage:

    python benchmarks/bench_kernels.py [--reps 5]
"""

import argparse
import time

import numpy as np

from lgbeams.kernels import available_backends


def best_of(fn, reps):
    times = []
    for _ in range(reps):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def mode_window(lmax=3, pmax=3):
    return [(l, p) for l in range(-lmax, lmax + 1) for p in range(pmax + 1)]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    if "compiled" not in backends:
        print("note: compiled kernel not built; timing the numpy fallback only")

    print(f"{'case':<32} " + " ".join(f"{name:>12}" for name in backends)
          + ("   speedup" if len(backends) > 1 else ""))

    for n in (256, 512, 1024):
        c = np.linspace(-8.0, 8.0, n)
        X, Y = np.meshgrid(c, c)

        rows = {
            f"single mode (l=3, p=2), n={n}":
                lambda be: be.lg_mode_samples(X, Y, 3, 2, 1.0, 0.3, 0.7, 0.5),
            f"28-mode window sweep, n={n}":
                lambda be: [be.lg_mode_samples(X, Y, l, p, 1.0, 0.0, 0.0, 0.5)
                            for l, p in mode_window()],
        }
        for label, work in rows.items():
            times = {name: best_of(lambda be=be: work(be), args.reps)
                     for name, be in backends.items()}
            line = f"{label:<32} " + " ".join(f"{t * 1e3:>10.2f}ms"
                                              for t in times.values())
            if "compiled" in times and "numpy" in times:
                line += f"   {times['numpy'] / times['compiled']:>6.2f}x"
            print(line)


if __name__ == "__main__":
    main()
