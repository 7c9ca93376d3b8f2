#!/usr/bin/env python3
"""Benchmark the integer hot kernels: numba JIT vs pure-numpy fallback.

Runs both implementations on the two search workloads (small-matrix Bareiss
rank and the Gray-code subset quadratic-form scan), checks that they agree,
and prints timings.  The numpy path is what you get with
STARCOMP_PURE_NUMPY=1; the numba path is the default.

Usage: python benchmarks/bench_kernels.py [--subset-bits N] [--rank-reps N]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from starcomp.kernels import (
    _rank_bareiss_loops,
    _rank_bareiss_numpy,
    _subset_scan_loops,
    _subset_scan_numpy,
)

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def bench(fn, args_iter, reps):
    t0 = time.perf_counter()
    out = None
    for args in args_iter[:reps]:
        out = fn(*args)
    return time.perf_counter() - t0, out


def rank_workload(reps, rng):
    cases = []
    for _ in range(reps):
        n = rng.randint(6, 10)
        m = np.array(
            [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)],
            dtype=np.int64,
        )
        cases.append((m,))
    return cases


def subset_workload(bits, rng):
    sym = np.zeros((bits, bits), dtype=np.int64)
    for i in range(bits):
        for j in range(i, bits):
            sym[i, j] = sym[j, i] = rng.randint(-50, 50)
    rj = sym.sum(axis=1)
    return [(sym, rj, np.int64(-100), np.int64(-40), True, 0, 1 << bits)]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--subset-bits", type=int, default=20)
    parser.add_argument("--rank-reps", type=int, default=20000)
    args = parser.parse_args()

    rng = random.Random(12345)
    print(f"numba available: {HAVE_NUMBA}")

    impls_rank = [("numpy", _rank_bareiss_numpy)]
    impls_scan = [("numpy", _subset_scan_numpy)]
    if HAVE_NUMBA:
        jit_rank = njit(cache=True, nogil=True)(_rank_bareiss_loops)
        jit_scan = njit(cache=True, nogil=True)(_subset_scan_loops)
        # trigger compilation outside the timed region
        jit_rank(np.eye(2, dtype=np.int64))
        jit_scan(
            np.zeros((2, 2), dtype=np.int64),
            np.zeros(2, dtype=np.int64),
            np.int64(1), np.int64(0), True, 0, 4,
        )
        impls_rank.append(("numba", jit_rank))
        impls_scan.append(("numba", jit_scan))

    print(f"\nBareiss rank, {args.rank_reps} matrices (6..10 square, entries |v|<=6)")
    cases = rank_workload(args.rank_reps, rng)
    results = {}
    for name, fn in impls_rank:
        # copies: the kernel works in place
        fresh = [(m.copy(),) for (m,) in cases]
        dt, _ = bench(fn, fresh, args.rank_reps)
        results[name] = dt
        print(f"  {name:>6}: {dt:8.3f} s  ({args.rank_reps / dt:9.0f} ranks/s)")
    _report_speedup(results)

    print(f"\nsubset scan, one pass over 2^{args.subset_bits} masks")
    cases = subset_workload(args.subset_bits, rng)
    results = {}
    outputs = {}
    for name, fn in impls_scan:
        dt, out = bench(fn, cases, 1)
        results[name] = dt
        outputs[name] = np.sort(np.asarray(out))
        rate = (1 << args.subset_bits) / dt
        print(f"  {name:>6}: {dt:8.3f} s  ({rate:12.0f} masks/s)")
    if len(outputs) == 2 and not np.array_equal(outputs["numba"], outputs["numpy"]):
        print("  ERROR: backends disagree")
        return 1
    _report_speedup(results)
    return 0


def _report_speedup(results):
    if "numba" in results and "numpy" in results:
        print(f"  speedup: {results['numpy'] / results['numba']:.1f}x")


if __name__ == "__main__":
    raise SystemExit(main())
