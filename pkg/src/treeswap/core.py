"""Tree, configuration, and swap-sequence model shared by every solver.

Vertices are 0-indexed; token ``i`` is home on vertex ``i``.  A configuration
is stored as ``placement`` where ``placement[v]`` is the token currently on
vertex ``v``.  All types are immutable values after construction and every
operation here is a pure function.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import (
    ColourCountMismatch,
    ColouredInstance,
    InvalidInstance,
    NonEdgeSwap,
    NotATree,
)

Colour = Hashable
Swap = tuple[int, int]

FAMILY_PATH = "path"
FAMILY_STAR = "star"
FAMILY_BROOM = "broom"
FAMILY_GENERAL = "general-tree"


def _normalize_edge(u: int, v: int) -> Swap:
    return (u, v) if u < v else (v, u)


@dataclass
class Tree:
    """An unrooted tree on vertices ``0..n-1`` given by its edge list."""

    n: int
    edges: tuple[Swap, ...]

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        self.n = int(n)
        if self.n < 1:
            raise NotATree(f"need at least one vertex, got n={n}")
        norm = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise NotATree(f"edge ({u},{v}) out of range for n={self.n}")
            if u == v:
                raise NotATree(f"self-loop at vertex {u}")
            norm.append(_normalize_edge(u, v))
        norm.sort()
        if len(set(norm)) != len(norm):
            raise NotATree("duplicate edge")
        self.edges = tuple(norm)
        if len(self.edges) != self.n - 1:
            raise NotATree(
                f"a tree on {self.n} vertices needs {self.n - 1} edges, "
                f"got {len(self.edges)}"
            )
        if self._count_reachable(0) != self.n:
            raise NotATree("graph is disconnected")

    def _count_reachable(self, start: int) -> int:
        seen = bytearray(self.n)
        seen[start] = 1
        queue = deque([start])
        count = 1
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if not seen[w]:
                    seen[w] = 1
                    count += 1
                    queue.append(w)
        return count

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def degree(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @cached_property
    def edge_set(self) -> frozenset[Swap]:
        return frozenset(self.edges)

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        if self.n == 1:
            return (0,)
        return tuple(v for v in range(self.n) if self.degree[v] == 1)

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edge_set

    def distances_from(self, start: int) -> list[int]:
        dist = [-1] * self.n
        dist[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    @cached_property
    def dist_matrix(self) -> np.ndarray:
        """All-pairs distances, int16 (lazy; only small trees should ask)."""
        out = np.empty((self.n, self.n), dtype=np.int16)
        for v in range(self.n):
            out[v, :] = self.distances_from(v)
        return out

    @cached_property
    def next_hop(self) -> np.ndarray:
        """``next_hop[u, t]`` is the first vertex after ``u`` on the path to ``t``.

        ``next_hop[t, t] == t``.  Built from one BFS per target vertex.
        """
        out = np.empty((self.n, self.n), dtype=np.int32)
        for t in range(self.n):
            col = out[:, t]
            col[t] = t
            queue = deque([t])
            seen = bytearray(self.n)
            seen[t] = 1
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = 1
                        col[w] = u
                        queue.append(w)
        return out

    def path_between(self, u: int, v: int) -> list[int]:
        """Vertices of the unique u..v path, endpoints included."""
        hop = self.next_hop
        out = [u]
        while u != v:
            u = int(hop[u, v])
            out.append(u)
        return out

    def classify(self) -> str:
        """Most specific family among path, star, broom, general-tree."""
        if self.n <= 2:
            return FAMILY_PATH
        deg = self.degree
        if max(deg) <= 2:
            return FAMILY_PATH
        big = [v for v in range(self.n) if deg[v] >= 3]
        if len(big) > 1:
            return FAMILY_GENERAL
        center = big[0]
        if all(deg[v] == 1 for v in range(self.n) if v != center):
            return FAMILY_STAR
        # one high-degree vertex; a broom has at most one branch of >= 2 vertices
        long_branches = 0
        for w in self.adjacency[center]:
            if deg[w] > 1:
                long_branches += 1
        return FAMILY_BROOM if long_branches == 1 else FAMILY_GENERAL


def validate_tree(tree: Tree) -> str:
    """Family classification; construction already rejected non-trees."""
    return tree.classify()


@dataclass(frozen=True)
class Colouring:
    """Vertex and token colours; token colours are indexed by start vertex."""

    vertex_colour: tuple[Colour, ...]
    token_colour: tuple[Colour, ...]

    def __init__(self, vertex_colour: Sequence[Colour], token_colour: Sequence[Colour]):
        object.__setattr__(self, "vertex_colour", tuple(vertex_colour))
        object.__setattr__(self, "token_colour", tuple(token_colour))
        if len(self.vertex_colour) != len(self.token_colour):
            raise InvalidInstance("vertex_colour and token_colour lengths differ")
        if Counter(self.vertex_colour) != Counter(self.token_colour):
            raise ColourCountMismatch(
                "every colour must label equally many vertices and tokens"
            )

    @property
    def distinct(self) -> bool:
        return len(set(self.token_colour)) == len(self.token_colour)


class WeightTable:
    """Colour weights.  Swapping colours c, c' costs ``weight(c) + weight(c')``.

    Weights are exact non-negative rationals with denominator 1 or 2; they are
    stored internally in half-units so that sequence costs accumulate in plain
    integers.  Integer weights in, integer costs out.
    """

    def __init__(self, weights: dict[Colour, int | float | Fraction]):
        self._half: dict[Colour, int] = {}
        for colour, w in weights.items():
            f = Fraction(w).limit_denominator(2) if isinstance(w, float) else Fraction(w)
            if f != Fraction(w):
                raise InvalidInstance(f"weight {w!r} is not a multiple of 1/2")
            if f < 0:
                raise InvalidInstance(f"negative weight {w!r} for colour {colour!r}")
            if f.denominator not in (1, 2):
                raise InvalidInstance(f"weight {w!r} must be a multiple of 1/2")
            self._half[colour] = int(f * 2)

    def __contains__(self, colour: Colour) -> bool:
        return colour in self._half

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeightTable) and self._half == other._half

    def weight(self, colour: Colour) -> int | Fraction:
        return _from_half(self._half[colour])

    def half_units(self, colour: Colour) -> int:
        return self._half[colour]

    def as_dict(self) -> dict[Colour, int | Fraction]:
        return {c: _from_half(h) for c, h in self._half.items()}

    def __repr__(self) -> str:
        return f"WeightTable({self.as_dict()!r})"


def _from_half(half: int) -> int | Fraction:
    return half // 2 if half % 2 == 0 else Fraction(half, 2)


@dataclass
class Instance:
    """A token swapping instance: tree, start placement, optional colours/weights."""

    tree: Tree
    start: tuple[int, ...]
    colouring: Colouring | None = None
    weights: WeightTable | None = None

    def __init__(
        self,
        tree: Tree,
        start: Sequence[int],
        colouring: Colouring | None = None,
        weights: WeightTable | None = None,
    ):
        self.tree = tree
        self.start = tuple(int(t) for t in start)
        self.colouring = colouring
        self.weights = weights
        if sorted(self.start) != list(range(tree.n)):
            raise InvalidInstance("placement must be a bijection on 0..n-1")
        if colouring is not None and len(colouring.vertex_colour) != tree.n:
            raise InvalidInstance("colouring length differs from vertex count")
        if weights is not None:
            if colouring is None:
                raise InvalidInstance("weights require a colouring")
            missing = [
                c
                for c in set(colouring.vertex_colour) | set(colouring.token_colour)
                if c not in weights
            ]
            if missing:
                raise InvalidInstance(f"no weight for colours {missing!r}")

    @property
    def n(self) -> int:
        return self.tree.n

    @cached_property
    def token_colour_by_id(self) -> tuple[Colour, ...] | None:
        """Colour of token t (tokens identified by their home vertex id)."""
        if self.colouring is None:
            return None
        col = [None] * self.n
        for v, tok in enumerate(self.start):
            col[tok] = self.colouring.token_colour[v]
        return tuple(col)

    @property
    def distinct_colours(self) -> bool:
        return self.colouring is None or self.colouring.distinct

    def is_goal(self, placement: Sequence[int]) -> bool:
        """Exact sort for distinct colours, else colour match on every vertex."""
        if self.colouring is None:
            return all(placement[v] == v for v in range(self.n))
        vc = self.colouring.vertex_colour
        tc = self.token_colour_by_id
        return all(tc[placement[v]] == vc[v] for v in range(self.n))

    def token_weight(self, token: int) -> int | Fraction:
        if self.weights is None or self.token_colour_by_id is None:
            raise InvalidInstance("instance has no weights")
        return self.weights.weight(self.token_colour_by_id[token])


def weighted_instance(
    tree: Tree, start: Sequence[int], token_weights: Sequence[int | float | Fraction]
) -> Instance:
    """Distinct-colour instance with one weight per token (token i gets colour i)."""
    n = tree.n
    start = tuple(int(t) for t in start)
    vertex_colour = tuple(range(n))
    token_colour = tuple(start[v] for v in range(n))
    weights = WeightTable({i: token_weights[i] for i in range(n)})
    return Instance(tree, start, Colouring(vertex_colour, token_colour), weights)


@dataclass(frozen=True)
class ApplyResult:
    placement: tuple[int, ...]
    length: int
    cost: int | Fraction


def apply_sequence(inst: Instance, seq) -> ApplyResult:
    """Replay a swap sequence; returns final placement, length, and weighted cost.

    Without a weight table every swap costs 1, so ``cost == length`` (the
    unweighted problem prices each token move at one half).
    """
    plc = list(inst.start)
    edge_ok = inst.tree.edge_set
    have_w = inst.weights is not None
    cost_half = 0
    length = 0
    if have_w:
        whalf = [inst.weights.half_units(c) for c in inst.token_colour_by_id]
    if isinstance(seq, np.ndarray):
        pairs = zip(seq[:, 0].tolist(), seq[:, 1].tolist())
    else:
        pairs = iter(seq)
    for u, v in pairs:
        u, v = int(u), int(v)
        if _normalize_edge(u, v) not in edge_ok:
            raise NonEdgeSwap(f"({u},{v}) is not an edge of the tree")
        a, b = plc[u], plc[v]
        if have_w:
            cost_half += whalf[a] + whalf[b]
        plc[u], plc[v] = b, a
        length += 1
    cost = _from_half(cost_half) if have_w else length
    return ApplyResult(tuple(plc), length, cost)


@dataclass(frozen=True)
class CycleDecomposition:
    """Cycles of the map "vertex holding token t -> vertex t".

    Star instances additionally expose the unlocked cycle (the one through the
    center), the non-trivial locked-cycle count ``l``, and the happy/unhappy
    leaf counts.
    """

    cycles: tuple[tuple[int, ...], ...]
    c: int
    nontrivial_count: int
    center: int | None = None
    unlocked: tuple[int, ...] | None = None
    locked: tuple[tuple[int, ...], ...] | None = None
    l: int | None = None
    n_unhappy: int | None = None
    n_happy: int | None = None


def placement_cycles(placement: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of the placement viewed as a permutation, trivial ones included."""
    n = len(placement)
    seen = [False] * n
    cycles = []
    for v in range(n):
        if seen[v]:
            continue
        cyc = []
        u = v
        while not seen[u]:
            seen[u] = True
            cyc.append(u)
            u = placement[u]
        cycles.append(tuple(cyc))
    return cycles


def star_center(tree: Tree) -> int:
    """Center of a star; for n <= 2 the convention is vertex 0."""
    if tree.n <= 2:
        return 0
    return max(range(tree.n), key=lambda v: tree.degree[v])


def cycle_decomposition(inst: Instance) -> CycleDecomposition:
    if not inst.distinct_colours:
        raise ColouredInstance("cycle structure needs distinct token colours")
    cycles = tuple(placement_cycles(inst.start))
    nontrivial = sum(1 for c in cycles if len(c) > 1)
    # star-shaped = at most one internal vertex (covers paths of <= 3 vertices)
    internal = sum(1 for v in range(inst.tree.n) if inst.tree.degree[v] > 1)
    if internal > 1:
        return CycleDecomposition(cycles, len(cycles), nontrivial)
    center = star_center(inst.tree)
    unlocked = next(c for c in cycles if center in c)
    locked = tuple(c for c in cycles if center not in c)
    l = sum(1 for c in locked if len(c) > 1)
    leaves = [v for v in range(inst.tree.n) if v != center]
    n_unhappy = sum(1 for v in leaves if inst.start[v] != v)
    return CycleDecomposition(
        cycles,
        len(cycles),
        nontrivial,
        center=center,
        unlocked=unlocked,
        locked=locked,
        l=l,
        n_unhappy=n_unhappy,
        n_happy=len(leaves) - n_unhappy,
    )


def distance_metrics(inst: Instance) -> tuple[int, int | Fraction | None]:
    """(D, D_w): total token distance to home, and its weighted counterpart.

    ``D_w`` is ``None`` when the instance carries no weights.  Both metrics
    need distinct colours to pin down each token's destination.
    """
    if not inst.distinct_colours:
        raise ColouredInstance("distance metrics need distinct token colours")
    dm = inst.tree.dist_matrix
    d_total = 0
    dw_half = 0
    have_w = inst.weights is not None
    for v, tok in enumerate(inst.start):
        d = int(dm[v, tok])
        d_total += d
        if have_w:
            dw_half += d * inst.weights.half_units(inst.token_colour_by_id[tok])
    return d_total, (_from_half(dw_half) if have_w else None)


def is_identity(placement: Sequence[int]) -> bool:
    return all(p == v for v, p in enumerate(placement))
