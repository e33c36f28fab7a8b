"""Pure-numpy fallbacks for the search kernels (no JIT, vectorized levels)."""

from __future__ import annotations

import numpy as np

from ._lehmer import batch_rank, batch_unrank

UNSEEN = 255


def bfs_distances(n, eu, ev, start_rank, goal_rank, dist, fact):
    """Vectorized level-synchronous BFS; same contract as the numba kernel."""
    m = eu.shape[0]
    dist[start_rank] = 0
    frontier = np.array([start_rank], dtype=np.int64)
    visited = 1
    d = 0
    if goal_rank == start_rank:
        return visited
    while frontier.size:
        perms = batch_unrank(frontier, n, fact)
        candidates = np.empty(frontier.size * m, dtype=np.int64)
        for e in range(m):
            swapped = perms.copy()
            swapped[:, [eu[e], ev[e]]] = swapped[:, [ev[e], eu[e]]]
            candidates[e * frontier.size : (e + 1) * frontier.size] = batch_rank(
                swapped, fact
            )
        fresh = np.unique(candidates[dist[candidates] == UNSEEN])
        if fresh.size == 0:
            break
        d += 1
        dist[fresh] = d
        visited += fresh.size
        if goal_rank >= 0 and dist[goal_rank] != UNSEEN:
            break
        frontier = fresh
    return visited


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
    """Chunked vectorized version of the happy-leaf counterexample scan."""
    nf = dist_full.shape[0]
    cap = out_ranks.shape[0]
    count = 0
    chunk = 1 << 17
    for lo in range(0, nf, chunk):
        ranks = np.arange(lo, min(lo + chunk, nf), dtype=np.int64)
        perms = batch_unrank(ranks, n, fact)
        masks = np.zeros(ranks.size, dtype=np.int64)
        for i, lf in enumerate(leaves):
            masks |= (perms[:, lf] == lf).astype(np.int64) << i
        for mask in np.unique(masks):
            rows = np.nonzero(masks == mask)[0]
            msize = int(sub_sizes[mask])
            remap = newid[mask]
            keep = np.nonzero(remap >= 0)[0]
            sub = remap[perms[rows][:, keep]].astype(np.uint8)
            sub_ranks = batch_rank(sub, fact)
            table = sub_tables[sub_offsets[mask] : sub_offsets[mask] + fact[msize]]
            bad = rows[table[sub_ranks] > dist_full[ranks[rows]]]
            for r in ranks[bad]:
                if count < cap:
                    out_ranks[count] = r
                count += 1
    return count
