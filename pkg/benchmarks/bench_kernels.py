#!/usr/bin/env python3
"""Benchmark the compiled elimination kernel against the pure-Python twin.

Workloads mirror the package's hot paths: incidence-style sparse +/-1
matrices (homology ranks, Kirchhoff checks) and denser small-integer
matrices (statics equilibrium systems).

Run after building the extension:  python benchmarks/bench_kernels.py
"""

import random
import statistics
import time

from homnet._kernel import pure

try:
    from homnet._kernel import _speedups as compiled

    compiled = compiled if compiled is not None else None
except ImportError:
    compiled = None
if compiled is None:
    import importlib

    try:
        compiled = importlib.import_module("homnet._kernel._speedups")
    except ImportError:
        compiled = None


def incidence_like(rng, nodes, branches):
    rows = []
    for _ in range(branches):
        tail = rng.randrange(nodes)
        head = (tail + 1 + rng.randrange(nodes - 1)) % nodes
        row = [0] * nodes
        row[tail] = -1
        row[head] = 1
        rows.append(row)
    return rows


def statics_like(rng, nodes, branches, dim=2):
    # like an equilibrium matrix: each branch column holds +/- coordinate
    # differences in the blocks of its two endpoint nodes
    rows = [[0] * branches for _ in range(nodes * dim)]
    for a in range(branches):
        tail = rng.randrange(nodes)
        head = (tail + 1 + rng.randrange(nodes - 1)) % nodes
        delta = [rng.randint(-9, 9) for _ in range(dim)]
        if all(d == 0 for d in delta):
            delta[0] = 1
        for c in range(dim):
            rows[head * dim + c][a] = delta[c]
            rows[tail * dim + c][a] = -delta[c]
    return rows


def time_kernel(kernel, matrices, repeats=5):
    timings = []
    overflowed = 0
    for _ in range(repeats):
        start = time.perf_counter()
        for rows in matrices:
            try:
                kernel.echelon([row[:] for row in rows], len(rows[0]))
            except OverflowError:
                overflowed += 1
        timings.append(time.perf_counter() - start)
    return min(timings), statistics.median(timings), overflowed


def main():
    rng = random.Random(20240601)
    workloads = {
        "incidence 12x8 x400": [incidence_like(rng, 8, 12) for _ in range(400)],
        "incidence 40x20 x100": [incidence_like(rng, 20, 40) for _ in range(100)],
        "statics n=8 b=14 x200": [statics_like(rng, 8, 14) for _ in range(200)],
        "statics n=16 b=30 x50": [statics_like(rng, 16, 30) for _ in range(50)],
    }

    print(f"{'workload':<24} {'pure (ms)':>12} {'compiled (ms)':>14} {'speedup':>9}")
    for name, matrices in workloads.items():
        pure_best, _, _ = time_kernel(pure, matrices)
        if compiled is not None:
            comp_best, _, overflowed = time_kernel(compiled, matrices)
            for rows in matrices[:5]:
                a = pure.echelon([r[:] for r in rows], len(rows[0]))
                try:
                    b = compiled.echelon(rows, len(rows[0]))
                except OverflowError:
                    continue
                assert a == b, f"backend mismatch on {name}"
            if overflowed:
                # aborted runs make the raw ratio meaningless; in production
                # the wrapper reruns these through the pure kernel
                print(
                    f"{name:<24} {pure_best * 1e3:>12.2f} {comp_best * 1e3:>14.2f}"
                    f" {'partial':>9} ({overflowed} overflows fall back)"
                )
            else:
                print(
                    f"{name:<24} {pure_best * 1e3:>12.2f} {comp_best * 1e3:>14.2f}"
                    f" {pure_best / comp_best:>8.1f}x"
                )
        else:
            print(f"{name:<24} {pure_best * 1e3:>12.2f} {'not built':>14} {'-':>9}")


if __name__ == "__main__":
    main()
