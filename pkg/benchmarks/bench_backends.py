#!/usr/bin/env python3
"""Compare the numba kernels against the pure-numpy fallback.

Times the full configuration-space BFS (the package's hot kernel) on paths
and stars of growing size, and the happy-leaf counterexample scan.  Select a
single backend via TREESWAP_BACKEND=numba|numpy; by default both run.

Usage: python benchmarks/bench_backends.py [--max-n 9]
"""

from __future__ import annotations

import argparse
import os
import time

from treeswap import experiments, oracle
from treeswap.core import Tree


def time_call(fn, *args):
    t0 = time.perf_counter()
    fn(*args)
    return time.perf_counter() - t0


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=9)
    args = parser.parse_args()

    backends = ["numba", "numpy"]
    if os.environ.get("TREESWAP_BACKEND") in backends:
        backends = [os.environ["TREESWAP_BACKEND"]]

    cases = []
    for n in range(7, args.max_n + 1):
        cases.append((f"bfs path n={n}", oracle.all_distances, Tree(n, [(i, i + 1) for i in range(n - 1)])))
        cases.append((f"bfs star n={n}", oracle.all_distances, Tree(n, [(i, n - 1) for i in range(n - 1)])))
    cases.append(
        (
            "happy-leaf scan n=8 (all trees)",
            lambda _: experiments.happy_leaf_search(max_n=8),
            None,
        )
    )

    # warm up the JIT so compilation is not billed to the first case
    if "numba" in backends:
        os.environ["TREESWAP_BACKEND"] = "numba"
        oracle.all_distances(Tree(4, [(0, 1), (1, 2), (2, 3)]))
        experiments.happy_leaf_search(max_n=4)

    width = max(len(name) for name, _, _ in cases)
    header = f"{'case'.ljust(width)}  " + "  ".join(f"{b:>10}" for b in backends)
    print(header)
    print("-" * len(header))
    for name, fn, arg in cases:
        row = [name.ljust(width)]
        for backend in backends:
            os.environ["TREESWAP_BACKEND"] = backend
            row.append(f"{time_call(fn, arg):9.3f}s")
        print("  ".join(row))


if __name__ == "__main__":
    main()
