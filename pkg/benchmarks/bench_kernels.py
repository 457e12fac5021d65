#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Kernels timed on dumbbell distance matrices DB(W_{m,n}) of growing order:

  apsp          all-pairs BFS distances
  jacobi        Jacobi eigenvalues of the distance matrix
  charpoly_mod  characteristic polynomial modulo one 26-bit prime

Each (kernel, backend, size) cell reports the best of ``--repeat`` runs
after one untimed warm-up call, so numba compilation is excluded.
Results of the two backends are compared on every cell.

Usage:
    python benchmarks/bench_kernels.py [--sizes 20,40,80] [--repeat 5]
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from distspec import graphs, kernels
from distspec._accel import HAVE_NUMBA


def _best_of(fn, repeat: int) -> float:
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _instance(order: int):
    # DB(W_{m,n}) has 2(m+n) vertices; split the order evenly.
    half = max(order // 2, 4)
    m = max(1, half // 3)
    g = graphs.dumbbell(m, half - m)
    d = graphs.distance_array(g)
    return g.adjacency, d


def run(sizes, repeat: int):
    p = kernels.primes_below(1 << kernels.PRIME_BITS, 1)[0]
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    rows = []
    for order in sizes:
        adj, d = _instance(order)
        n = adj.shape[0]
        dmod = d % p
        cases = {
            "apsp": lambda b: kernels.apsp(adj, backend=b),
            "jacobi": lambda b: kernels.jacobi_eigenvalues(d, backend=b),
            "charpoly_mod": lambda b: kernels.charpoly_mod(dmod, p, backend=b),
        }
        for name, fn in cases.items():
            times = {b: _best_of(lambda b=b: fn(b), repeat) for b in backends}
            outs = {b: fn(b) for b in backends}
            if name == "jacobi":
                same = all(np.allclose(outs[b], outs["numpy"], atol=1e-8) for b in backends)
            else:
                same = all(np.array_equal(outs[b], outs["numpy"]) for b in backends)
            rows.append((name, n, times, same))
    return backends, rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="20,40,80,160", help="comma-separated approximate matrix orders")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",") if s]
    backends, rows = run(sizes, args.repeat)
    if not HAVE_NUMBA:
        print("numba is not installed; timing the numpy fallback only", file=sys.stderr)
    header = f"{'kernel':<14}{'order':>6}" + "".join(f"{b + ' ms':>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header + f"{'agree':>7}")
    ok = True
    for name, n, times, same in rows:
        line = f"{name:<14}{n:>6}" + "".join(f"{times[b] * 1e3:>12.3f}" for b in backends)
        if len(backends) == 2:
            line += f"{times['numpy'] / times['numba']:>9.1f}x"
        print(line + f"{'yes' if same else 'NO':>7}")
        ok &= same
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
