"""Shared test utilities: random trees, random instances, replay checks."""

from __future__ import annotations

import random

from treeswap.core import Instance, Tree


def random_tree(rng: random.Random, n: int) -> Tree:
    """Uniform labeled tree on n vertices from a random parent sequence."""
    if n == 1:
        return Tree(1, [])
    if n == 2:
        return Tree(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append((u, w))
    return Tree(n, edges)


def random_placement(rng: random.Random, n: int) -> tuple[int, ...]:
    perm = list(range(n))
    rng.shuffle(perm)
    return tuple(perm)


def random_instance(rng: random.Random, n: int) -> Instance:
    return Instance(random_tree(rng, n), random_placement(rng, n))


def replay(inst: Instance, swaps, per_swap=None) -> tuple[int, ...]:
    """Apply swaps with an optional per-swap callback (placement, u, v)."""
    plc = list(inst.start)
    edge_set = inst.tree.edge_set
    for u, v in swaps:
        assert (min(u, v), max(u, v)) in edge_set
        plc[u], plc[v] = plc[v], plc[u]
        if per_swap is not None:
            per_swap(plc, u, v)
    return tuple(plc)


def happy_leaves(inst: Instance) -> list[int]:
    """Leaves whose initial token is already home."""
    return [v for v in inst.tree.leaves if inst.start[v] == v]


def never_moves_happy_leaves(inst: Instance, swaps) -> bool:
    fixed = set(happy_leaves(inst))
    return all(u not in fixed and v not in fixed for u, v in swaps)
