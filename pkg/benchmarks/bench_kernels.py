#!/usr/bin/env python3
"""Timing comparison of the kernel backends (compiled extension vs numpy fallback).

Measures the unitary FFT and the split-step stepping loop at the sizes the
verification suite actually uses.  Run after installing the package:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 256,1024,4096 --steps 4096
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cohstate import kernels


def best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="256,1024,4096")
    parser.add_argument("--steps", type=int, default=4096)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = kernels.available_backends()
    print(f"selected backend: {kernels.BACKEND}")
    print(f"available: {[m.BACKEND for m in backends]}")
    rng = np.random.default_rng(7)

    print(f"\n{'kernel':28s}" + "".join(f"{m.BACKEND:>14s}" for m in backends) + f"{'speedup':>10s}")
    for n in sizes:
        values = rng.normal(size=n) + 1j * rng.normal(size=n)
        times = [best_of(lambda m=m: m.fft(values), args.repeats * 20) for m in backends]
        row = f"fft n={n:<6d} (one call)    " + "".join(f"{t * 1e6:12.1f}us" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:9.1f}x"
        print(row)

    for n in sizes:
        x = np.linspace(-10, 10, n, endpoint=False)
        psi = np.exp(-0.5 * x**2) * (1.0 + 0.0j)
        vh = np.exp(-0.25j * x**2 * 1e-3)
        k = np.fft.fftfreq(n, d=x[1] - x[0]) * 2 * np.pi
        kin = np.exp(-0.5j * k**2 * 1e-3)
        times = [
            best_of(lambda m=m: m.split_step_run(psi, vh, kin, args.steps), args.repeats)
            for m in backends
        ]
        row = f"split-step n={n:<5d} x{args.steps:<6d}" + "".join(f"{t * 1e3:12.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[1] / times[0]:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
