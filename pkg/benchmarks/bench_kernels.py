#!/usr/bin/env python3
"""Benchmark: compiled kernels vs the pure-Python fallback.

Times the two hot loops (normal-form reduction and projective point
enumeration) on identical seeded workloads and prints a comparison table.
Run from the repository root:

    python benchmarks/bench_kernels.py
"""

import random
import time

from fanocheck import kernels
from fanocheck.kernels import pure


def rand_poly(rng, nvars, deg, terms, p):
    out = {}
    for _ in range(terms):
        e = [0] * nvars
        for _ in range(deg):
            e[rng.randrange(nvars)] += 1
        out[tuple(e)] = rng.randrange(1, p)
    return out


def bench_reduction(reducer_factory, seed=11, p=101, nvars=6, rounds=400):
    rng = random.Random(seed)
    r = reducer_factory(p, nvars)
    for _ in range(8):
        r.add(rand_poly(rng, nvars, rng.randint(2, 4), 10, p))
    targets = [rand_poly(rng, nvars, rng.randint(3, 6), 24, p) for _ in range(rounds)]
    t0 = time.perf_counter()
    sink = 0
    for t in targets:
        sink ^= len(r.reduce(t))
    return time.perf_counter() - t0, sink


def bench_enumeration(zeros_fn, seed=12, p=5, nvars=4, ext=2, rounds=6):
    rng = random.Random(seed)
    total = 0
    t0 = time.perf_counter()
    for _ in range(rounds):
        gens = [rand_poly(rng, nvars, rng.randint(2, 3), 6, p) for _ in range(2)]
        count, _ = zeros_fn(gens, nvars, p, ext, 0)
        total += count
    return time.perf_counter() - t0, total


def main():
    have_compiled = kernels.implementation() == "compiled"
    print(f"active kernel implementation: {kernels.implementation()}")
    rows = []

    t_pure, chk_pure = bench_reduction(pure.Reducer)
    if have_compiled:
        from fanocheck.kernels import _speed
        t_fast, chk_fast = bench_reduction(_speed.Reducer)
        assert chk_fast == chk_pure, "implementations disagree"
    else:
        t_fast = None
    rows.append(("normal-form reduction (F_101, 6 vars, 400 polys)", t_fast, t_pure))

    t_pure, n_pure = bench_enumeration(pure.zeros_projective)
    if have_compiled:
        from fanocheck.kernels import _speed
        t_fast, n_fast = bench_enumeration(_speed.zeros_projective)
        assert n_fast == n_pure, "implementations disagree"
    else:
        t_fast = None
    rows.append(("zero enumeration (P^3 over F_25, 6 systems)", t_fast, t_pure))

    print(f"{'workload':<52} {'compiled':>10} {'pure':>10} {'speedup':>8}")
    for name, tf, tp in rows:
        if tf is None:
            print(f"{name:<52} {'n/a':>10} {tp:>9.3f}s {'':>8}")
        else:
            print(f"{name:<52} {tf:>9.3f}s {tp:>9.3f}s {tp / tf:>7.1f}x")


if __name__ == "__main__":
    main()
