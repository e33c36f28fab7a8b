"""Kernel backend selection.

The breadth-first searches over all n! configurations dominate the runtime of
the oracle and the conjecture search.  They are implemented twice: as numba
``@njit`` kernels and as vectorized pure-numpy fallbacks.  Selection is via
the ``TREESWAP_BACKEND`` environment variable: ``auto`` (default; numba when
importable), ``numba``, or ``numpy``.  ``benchmarks/bench_backends.py``
compares the two.
"""

from __future__ import annotations

import os

from . import _numpy
from ._lehmer import batch_rank, batch_unrank, factorials, rank_perm, unrank_perm

try:
    from . import _numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None
    _HAVE_NUMBA = False

__all__ = [
    "active_backend",
    "bfs_distances",
    "happy_leaf_scan",
    "factorials",
    "rank_perm",
    "unrank_perm",
    "batch_rank",
    "batch_unrank",
]


def active_backend() -> str:
    choice = os.environ.get("TREESWAP_BACKEND", "auto").lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"TREESWAP_BACKEND must be auto|numba|numpy, got {choice!r}")
    if choice == "numba" and not _HAVE_NUMBA:
        raise RuntimeError("TREESWAP_BACKEND=numba but numba is not importable")
    if choice == "auto":
        return "numba" if _HAVE_NUMBA else "numpy"
    return choice


def _module():
    return _numba if active_backend() == "numba" else _numpy


def bfs_distances(n, eu, ev, start_rank, goal_rank, dist, fact):
    return _module().bfs_distances(n, eu, ev, start_rank, goal_rank, dist, fact)


def happy_leaf_scan(
    n, dist_full, leaves, newid, sub_sizes, sub_offsets, sub_tables, fact, out_ranks
):
    return _module().happy_leaf_scan(
        n, dist_full, leaves, newid, sub_sizes, sub_offsets, sub_tables, fact, out_ranks
    )
