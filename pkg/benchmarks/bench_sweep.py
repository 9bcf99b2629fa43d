#!/usr/bin/env python3
"""Benchmark the exhaustive-sweep kernels: compiled extension vs pure Python.

Runs the same weight-1..E codestruct sweep through both kernels and
reports patterns decoded per second plus the speedup.  Use --max-errors 8
for the full 3.1M-pattern 4x4 column (the pure kernel needs a minute or
two there; the default stops at 6).

    python3 benchmarks/bench_sweep.py
    python3 benchmarks/bench_sweep.py --code 3x3 --max-errors 8 --repeat 5
"""

import argparse
import math
import time

from overlap_ecc import _sweep_py
from overlap_ecc.code import builtin_config
from overlap_ecc.injection import KERNEL_NAME, Region, sweep

try:
    from overlap_ecc import _speedups
except ImportError:
    _speedups = None


def time_kernel(kernel, cfg, region, e_max, repeat):
    best = math.inf
    reports = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        reports = sweep(cfg, region, 1, e_max, workers=1, kernel=kernel)
        best = min(best, time.perf_counter() - t0)
    return best, reports


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--code", default="4x4", choices=("2x2", "3x3", "4x4"))
    ap.add_argument("--region", default="codestruct",
                    choices=("data", "check", "codestruct"))
    ap.add_argument("--max-errors", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3,
                    help="timing repetitions; best run is reported")
    args = ap.parse_args()

    cfg = builtin_config(args.code)
    region = Region.parse(args.region)
    size = region.size(cfg.m, cfg.n)
    e_max = min(args.max_errors, size)
    patterns = sum(math.comb(size, e) for e in range(1, e_max + 1))

    print(f"workload: {args.code} {region.value} weights 1..{e_max} "
          f"({patterns:,} patterns, active kernel: {KERNEL_NAME})")

    t_pure, ref = time_kernel(_sweep_py, cfg, region, e_max, args.repeat)
    print(f"pure python : {t_pure:8.3f} s   {patterns / t_pure:12,.0f} patterns/s")

    if _speedups is None:
        print("compiled    : not built (pip install -e . rebuilds it)")
        return

    t_ext, got = time_kernel(_speedups, cfg, region, e_max, args.repeat)
    print(f"compiled    : {t_ext:8.3f} s   {patterns / t_ext:12,.0f} patterns/s")
    print(f"speedup     : {t_pure / t_ext:8.1f} x")

    mismatch = [(a.errors, (a.corrected, a.detected), (b.corrected, b.detected))
                for a, b in zip(ref, got)
                if (a.corrected, a.detected) != (b.corrected, b.detected)]
    if mismatch:
        raise SystemExit(f"kernel tallies disagree: {mismatch}")
    print("tallies     : identical across kernels")


if __name__ == "__main__":
    main()
