"""Benchmark the compiled term-map kernels against the pure-Python fallback.

Run:  python benchmarks/bench_kernels.py [--repeat N]

Workloads cover the three hot paths: sparse multiplication, derivation
application, and the full decomposition solver on forward-generated
instances.  Both backends produce identical results; only the time differs.
"""

import argparse
import random
import time

from germsplit import CocycleData, WilliamsonType, set_backend, solve, standard_basis
from germsplit.oracles import random_instance, random_poly


def _workloads():
    rng = random.Random(20240501)
    n = 3
    dense_a = random_poly(rng, n, 8, max_terms=120)
    dense_b = random_poly(rng, n, 8, max_terms=120)
    system = standard_basis(WilliamsonType(1, 1, 1, 4))
    applied = random_poly(rng, 4, 7, max_terms=150)
    instances = []
    solve_system = standard_basis(WilliamsonType(1, 0, 1, 3))
    for seed in range(12):
        data, _ = random_instance(solve_system, 6, seed, h_terms=12)
        instances.append(data)

    def bench_mul():
        for _ in range(60):
            dense_a * dense_b

    def bench_derivation():
        for _ in range(150):
            for X in system.X:
                X.apply(applied)

    def bench_solve():
        for data in instances:
            solve(CocycleData(data.system, data.g))

    return [("poly multiply (deg 8, ~120 terms)", bench_mul),
            ("derivation apply (r = 4 fields)", bench_derivation),
            ("solve, 12 forward instances", bench_solve)]


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions per workload (default: 3)")
    args = parser.parse_args()

    backends = ["pure"]
    try:
        set_backend("compiled")
        backends.append("compiled")
    except RuntimeError:
        print("compiled kernels unavailable; timing the pure backend only")

    workloads = _workloads()
    results = {}
    for backend in backends:
        set_backend(backend)
        for label, fn in workloads:
            results[(backend, label)] = _time(fn, args.repeat)
    set_backend("auto")

    width = max(len(label) for label, _ in workloads)
    header = f"{'workload':<{width}}  {'pure':>10}"
    if "compiled" in backends:
        header += f"  {'compiled':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, _ in workloads:
        pure = results[("pure", label)]
        line = f"{label:<{width}}  {pure * 1e3:>8.1f}ms"
        if "compiled" in backends:
            comp = results[("compiled", label)]
            line += f"  {comp * 1e3:>8.1f}ms  {pure / comp:>7.2f}x"
        print(line)


if __name__ == "__main__":
    main()
