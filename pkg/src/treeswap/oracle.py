"""Exact optimum by explicit search of the configuration space.

Unweighted distinct-colour instances go through the byte-distance BFS kernels
(ranks index all n! placements).  Weighted and coloured variants use a plain
uniform-cost / breadth-first search over placement tuples; their state spaces
are capped smaller because of the per-state overhead.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import backends
from .core import Instance, Swap, Tree, _from_half
from .errors import TooLarge, Unreachable

DEFAULT_CAP = 10
DEFAULT_WEIGHTED_CAP = 8
UNSEEN = 255


@dataclass(frozen=True)
class SearchResult:
    cost: int | Fraction
    swaps: list[Swap]
    states_expanded: int


@dataclass(frozen=True)
class DistanceTable:
    """Distances from the identity configuration to every placement."""

    tree: Tree
    dist: np.ndarray

    def lookup(self, placement: Sequence[int]) -> int:
        return int(self.dist[backends.rank_perm(placement)])

    def max_distance(self) -> int:
        return int(self.dist.max())


def _edge_arrays(tree: Tree, forbidden: Iterable[int] = ()) -> tuple[np.ndarray, np.ndarray]:
    banned = set(forbidden)
    edges = [(u, v) for u, v in tree.edges if u not in banned and v not in banned]
    eu = np.array([u for u, _ in edges], dtype=np.int64)
    ev = np.array([v for _, v in edges], dtype=np.int64)
    return eu, ev


def _check_cap(n: int, cap: int | None, default: int) -> None:
    limit = default if cap is None else cap
    if n > limit:
        raise TooLarge(f"n={n} exceeds the search cap {limit}")
    if n > 12:
        raise TooLarge(f"n={n}: the dense rank table would not fit in memory")


def all_distances(tree: Tree, cap: int | None = None) -> DistanceTable:
    """One BFS from the identity; by swap symmetry entry p is optimal for p."""
    _check_cap(tree.n, cap, DEFAULT_CAP)
    fact = backends.factorials(tree.n)
    dist = np.full(int(fact[tree.n]), UNSEEN, dtype=np.uint8)
    eu, ev = _edge_arrays(tree)
    backends.bfs_distances(tree.n, eu, ev, 0, -1, dist, fact)
    return DistanceTable(tree, dist)


def diameter(tree: Tree, cap: int | None = None) -> int:
    return all_distances(tree, cap=cap).max_distance()


def optimal(
    inst: Instance,
    forbidden_vertices: Iterable[int] = (),
    cap: int | None = None,
) -> SearchResult:
    """Certified optimum cost plus one witnessing sequence.

    ``forbidden_vertices`` bans every swap touching those vertices (a fixed
    token on such a vertex is inert).  Unweighted/uncoloured instances use
    breadth-first search; weighted ones a uniform-cost search; coloured ones
    accept any placement whose token colours match the vertex colours.
    """
    forbidden = tuple(sorted(set(forbidden_vertices)))
    if inst.weights is None and inst.distinct_colours:
        _check_cap(inst.n, cap, DEFAULT_CAP)
        return _bfs_optimal(_normalize_distinct(inst), forbidden)
    _check_cap(inst.n, cap, DEFAULT_WEIGHTED_CAP)
    return _state_search(inst, forbidden)


def _normalize_distinct(inst: Instance) -> Instance:
    """Rename tokens by their colour-matched target so the goal is the identity."""
    if inst.colouring is None:
        return inst
    vertex_by_colour = {c: v for v, c in enumerate(inst.colouring.vertex_colour)}
    start = tuple(
        vertex_by_colour[inst.colouring.token_colour[v]] for v in range(inst.n)
    )
    return Instance(inst.tree, start)


def _bfs_optimal(inst: Instance, forbidden: tuple[int, ...]) -> SearchResult:
    n = inst.n
    fact = backends.factorials(n)
    start_rank = backends.rank_perm(inst.start)
    goal_rank = 0  # identity
    dist = np.full(int(fact[n]), UNSEEN, dtype=np.uint8)
    eu, ev = _edge_arrays(inst.tree, forbidden)
    expanded = backends.bfs_distances(n, eu, ev, start_rank, goal_rank, dist, fact)
    if dist[goal_rank] == UNSEEN:
        raise Unreachable("goal configuration is not reachable under the restriction")
    swaps = _walk_down(inst, dist, fact, eu, ev)
    return SearchResult(int(dist[goal_rank]), swaps, int(expanded))


def _walk_down(inst, dist, fact, eu, ev) -> list[Swap]:
    """Reconstruct one shortest sequence by walking from the goal toward the start."""
    perm = list(range(inst.n))
    d = int(dist[0])
    rev: list[Swap] = []
    edges = list(zip(eu.tolist(), ev.tolist()))
    while d > 0:
        for u, v in edges:
            perm[u], perm[v] = perm[v], perm[u]
            if dist[backends.rank_perm(perm)] == d - 1:
                rev.append((u, v))
                d -= 1
                break
            perm[u], perm[v] = perm[v], perm[u]
        else:  # pragma: no cover - BFS layers guarantee a predecessor
            raise AssertionError("no downhill neighbour found")
    rev.reverse()
    return rev


def _state_search(inst: Instance, forbidden: tuple[int, ...]) -> SearchResult:
    """Uniform-cost (or breadth-first) search over placement tuples."""
    banned = set(forbidden)
    edges = [e for e in inst.tree.edges if e[0] not in banned and e[1] not in banned]
    weighted = inst.weights is not None
    whalf = None
    if weighted:
        whalf = [inst.weights.half_units(c) for c in inst.token_colour_by_id]
    start = inst.start
    best: dict[tuple[int, ...], int] = {start: 0}
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], Swap] | None] = {start: None}
    heap: list[tuple[int, int, tuple[int, ...]]] = [(0, 0, start)]
    tie = 0
    expanded = 0
    goal_state = None
    while heap:
        cost, _, state = heapq.heappop(heap)
        if cost > best.get(state, cost):
            continue
        expanded += 1
        if inst.is_goal(state):
            goal_state = state
            break
        lst = list(state)
        for u, v in edges:
            a, b = lst[u], lst[v]
            step = (whalf[a] + whalf[b]) if weighted else 2
            lst[u], lst[v] = b, a
            nxt = tuple(lst)
            lst[u], lst[v] = a, b
            ncost = cost + step
            old = best.get(nxt)
            if old is None or ncost < old:
                best[nxt] = ncost
                parent[nxt] = (state, (u, v))
                tie += 1
                heapq.heappush(heap, (ncost, tie, nxt))
    if goal_state is None:
        raise Unreachable("goal configuration is not reachable under the restriction")
    swaps: list[Swap] = []
    cur = goal_state
    while parent[cur] is not None:
        prev, swap = parent[cur]
        swaps.append(swap)
        cur = prev
    swaps.reverse()
    cost_half = best[goal_state]
    cost = _from_half(cost_half) if weighted else cost_half // 2
    return SearchResult(cost, swaps, expanded)
