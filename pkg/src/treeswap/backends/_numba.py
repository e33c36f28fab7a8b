"""Numba kernels for the configuration-space search and the happy-leaf scan."""

from __future__ import annotations

import numpy as np
from numba import njit

UNSEEN = np.uint8(255)


@njit(cache=True, inline="always")
def _unrank_into(rank, n, fact, digits, avail, perm):
    rem = rank
    for i in range(n):
        f = fact[n - 1 - i]
        digits[i] = rem // f
        rem -= digits[i] * f
    for i in range(n):
        avail[i] = i
    width = n
    for i in range(n):
        d = digits[i]
        perm[i] = avail[d]
        for j in range(d, width - 1):
            avail[j] = avail[j + 1]
        width -= 1


@njit(cache=True, inline="always")
def _rank_of(perm, n, fact):
    rank = 0
    for i in range(n - 1):
        smaller = 0
        pi = perm[i]
        for j in range(i + 1, n):
            if perm[j] < pi:
                smaller += 1
        rank += smaller * fact[n - 1 - i]
    return rank


@njit(cache=True)
def bfs_distances(n, eu, ev, start_rank, goal_rank, dist, fact):
    """Level-synchronous BFS from ``start_rank`` over single-swap moves.

    Fills ``dist`` (uint8, pre-set to 255) in place.  With ``goal_rank >= 0``
    the search stops once the goal's BFS level is complete.  Returns the
    number of states visited.
    """
    nf = dist.shape[0]
    m = eu.shape[0]
    frontier = np.empty(nf, dtype=np.int64)
    nxt = np.empty(nf, dtype=np.int64)
    digits = np.empty(n, dtype=np.int64)
    avail = np.empty(n, dtype=np.int64)
    perm = np.empty(n, dtype=np.int64)
    dist[start_rank] = 0
    frontier[0] = start_rank
    fsize = 1
    visited = 1
    d = np.uint8(0)
    found = goal_rank == start_rank
    while fsize > 0 and not found:
        nsize = 0
        nd = d + np.uint8(1)
        for idx in range(fsize):
            r = frontier[idx]
            _unrank_into(r, n, fact, digits, avail, perm)
            for e in range(m):
                u = eu[e]
                v = ev[e]
                a = perm[u]
                perm[u] = perm[v]
                perm[v] = a
                r2 = _rank_of(perm, n, fact)
                a = perm[u]
                perm[u] = perm[v]
                perm[v] = a
                if dist[r2] == UNSEEN:
                    dist[r2] = nd
                    nxt[nsize] = r2
                    nsize += 1
                    if r2 == goal_rank:
                        found = True
        visited += nsize
        frontier[:nsize] = nxt[:nsize]
        fsize = nsize
        d = nd
    return visited


@njit(cache=True)
def happy_leaf_scan(
    n,
    dist_full,
    leaves,
    newid,
    sub_sizes,
    sub_offsets,
    sub_tables,
    fact,
    out_ranks,
):
    """Compare every placement's distance with the happy-leaves-deleted distance.

    ``newid[mask, v]`` maps vertex ids of the full tree to the reduced tree in
    which the leaf subset ``mask`` was removed (-1 for removed vertices).
    Records ranks where the reduced distance strictly exceeds the full one.
    Returns the number of counterexamples found.
    """
    nf = dist_full.shape[0]
    nleaves = leaves.shape[0]
    digits = np.empty(n, dtype=np.int64)
    avail = np.empty(n, dtype=np.int64)
    perm = np.empty(n, dtype=np.int64)
    sub = np.empty(n, dtype=np.int64)
    cap = out_ranks.shape[0]
    count = 0
    for r in range(nf):
        _unrank_into(r, n, fact, digits, avail, perm)
        mask = 0
        for i in range(nleaves):
            lf = leaves[i]
            if perm[lf] == lf:
                mask |= 1 << i
        msize = sub_sizes[mask]
        j = 0
        for v in range(n):
            w = newid[mask, v]
            if w >= 0:
                sub[j] = newid[mask, perm[v]]
                j += 1
        sub_rank = _rank_of(sub, msize, fact)
        if sub_tables[sub_offsets[mask] + sub_rank] > dist_full[r]:
            if count < cap:
                out_ranks[count] = r
            count += 1
    return count
