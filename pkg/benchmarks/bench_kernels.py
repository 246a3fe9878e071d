"""Benchmark the compiled relation kernel against the pure-Python one.

Runs identical batch workloads (composition chains, iterated maps,
periodic-point masks) through both backends and prints a timing table.
The compiled kernel handles carriers up to 64 points; the pure kernel
has no width limit and doubles as the reference implementation.

Usage: python benchmarks/bench_kernels.py [--points N] [--rounds N]
"""

from __future__ import annotations

import argparse
import random
import time

from oredyn import _purerel

try:
    from oredyn import _fastrel
except ImportError:
    _fastrel = None


def random_rows(rng, n, density=0.25):
    rows = []
    for _ in range(n):
        mask = 0
        for j in range(n):
            if rng.random() < density:
                mask |= 1 << j
        rows.append(mask)
    return rows


def bench(label, fn, rounds):
    best = None
    for _ in range(rounds):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    print(f"  {label:<24} {best * 1000:9.3f} ms")
    return best


def workload_compose(kernel, batches):
    def run():
        for rows_a, rows_b in batches:
            kernel.compose(rows_a, rows_b)

    return run

def workload_iterate(kernel, batches, steps):
    def run():
        for rows_a, _ in batches:
            kernel.iterate(rows_a, steps)

    return run


def workload_cyclic(kernel, batches, nmax):
    def run():
        for rows_a, _ in batches:
            kernel.cyclic_mask(rows_a, nmax)

    return run


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=48)
    parser.add_argument("--batches", type=int, default=200)
    parser.add_argument("--rounds", type=int, default=5)
    parser.add_argument("--seed", type=int, default=20240901)
    args = parser.parse_args()

    if args.points > 64:
        parser.error("compiled kernel is capped at 64 points")

    rng = random.Random(args.seed)
    batches = [
        (random_rows(rng, args.points), random_rows(rng, args.points))
        for _ in range(args.batches)
    ]

    kernels = [("pure", _purerel)]
    if _fastrel is not None:
        kernels.append(("cython", _fastrel))
    else:
        print("compiled kernel not built; benchmarking the pure kernel only")

    # correctness cross-check before timing anything
    if _fastrel is not None:
        for rows_a, rows_b in batches[:20]:
            assert tuple(_purerel.compose(rows_a, rows_b)) == tuple(
                _fastrel.compose(rows_a, rows_b)
            )
            assert _purerel.cyclic_mask(rows_a, args.points) == _fastrel.cyclic_mask(
                rows_a, args.points
            )
        print("cross-check passed on 20 batches")

    results = {}
    for name, kernel in kernels:
        print(f"{name} backend ({args.batches} batches of {args.points} points):")
        results[name, "compose"] = bench(
            "compose", workload_compose(kernel, batches), args.rounds
        )
        results[name, "iterate^17"] = bench(
            "iterate^17", workload_iterate(kernel, batches, 17), args.rounds
        )
        results[name, "cyclic_mask"] = bench(
            "cyclic_mask", workload_cyclic(kernel, batches, args.points), args.rounds
        )

    if _fastrel is not None:
        print("speedup (pure / cython):")
        for op in ("compose", "iterate^17", "cyclic_mask"):
            ratio = results["pure", op] / results["cython", op]
            print(f"  {op:<24} {ratio:9.2f}x")


if __name__ == "__main__":
    main()
