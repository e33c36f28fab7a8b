"""Generators for the hard instances: the happy-leaf counterexample, the
lower-bound trees with their companion solutions, and the vertex-cover
reduction to weighted coloured token swapping."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .core import (
    Colouring,
    Instance,
    Swap,
    Tree,
    WeightTable,
    apply_sequence,
    is_identity,
)
from .errors import EvenB, NotACover, NotSorted, OddK, OverBudget, TreeswapError


class _Builder:
    """Placement simulator that records the emitted swap sequence."""

    def __init__(self, start: Sequence[int]):
        self.plc = list(start)
        self.pos = [0] * len(self.plc)
        for v, t in enumerate(self.plc):
            self.pos[t] = v
        self.seq: list[Swap] = []

    def swap(self, u: int, v: int) -> None:
        a, b = self.plc[u], self.plc[v]
        self.plc[u], self.plc[v] = b, a
        self.pos[a], self.pos[b] = v, u
        self.seq.append((u, v))

    def walk_home(self, token: int, route: list[int]) -> int:
        """Swap ``token`` along consecutive route vertices; returns swap count."""
        for j in range(len(route) - 1):
            self.swap(route[j], route[j + 1])
        return len(route) - 1


# ---------------------------------------------------------------------------
# happy-leaf counterexample


def gen_happy_leaf_counterexample() -> tuple[Instance, list[Swap]]:
    """The 10-vertex tree whose optimum must move a happy leaf.

    Path 0..8 with an extra leaf 9 hanging off vertex 2; tokens 8..0 along
    the path and token 9 home on the leaf.  The companion sequence uses
    3 set-up swaps, 27 homing swaps, and 4 clean-up swaps.
    """
    tree = Tree(10, [(i, i + 1) for i in range(8)] + [(2, 9)])
    start = tuple([8 - j for j in range(9)] + [9])
    inst = Instance(tree, start)
    b = _Builder(start)
    # move the happy leaf token out of the way, to the path's left end
    for u, v in ((9, 2), (2, 1), (1, 0)):
        b.swap(u, v)
    # home tokens 8..3 (their walks never enter vertex 0)
    for t in range(8, 2, -1):
        b.walk_home(t, tree.path_between(b.pos[t], t))
    # clean up: home the leaf token, then token 0
    b.walk_home(9, tree.path_between(b.pos[9], 9))
    b.walk_home(0, tree.path_between(b.pos[0], 0))
    assert is_identity(b.plc) and len(b.seq) == 34
    return inst, b.seq


# ---------------------------------------------------------------------------
# approximation lower-bound trees


@dataclass(frozen=True)
class TkOutput:
    instance: Instance
    companion: list[Swap]
    reversal_cost: int
    phase_counts: tuple[int, int, int, int]


@dataclass(frozen=True)
class TkbOutput:
    instance: Instance
    companion: list[Swap]
    step_count: int  # swaps per exchange step
    k: int
    b: int
    fixup_count: int = 0  # residual leaf-cycle swaps (even b only)


def _exchange(b: _Builder, center: int, arm: list[int], want: list[int]) -> int:
    """Exchange the arm tokens with the leaf tokens listed in ``want``.

    ``want[j]`` is the token that must end on ``arm[j]``; each currently sits
    on some leaf of the center.  The center token walks out, the wanted
    tokens are pulled in (displacing arm tokens onto the vacated leaves), and
    the center token walks back, costing C(k+1, 2) + 2k swaps in total.
    """
    k = len(arm)
    before = len(b.seq)
    tc = b.plc[center]
    b.walk_home(tc, [center] + arm)
    for i in range(k, 0, -1):
        tok = want[i - 1]
        leaf = b.pos[tok]
        b.swap(leaf, center)
        route = [center] + arm[: i - 1]
        b.walk_home(tok, route)
    b.walk_home(tc, arm[::-1] + [center])
    used = len(b.seq) - before
    assert used == k * (k + 1) // 2 + 2 * k
    return used


def gen_Tk(k: int) -> TkOutput:
    """Path of 2k+1 vertices reversed around a center that carries k happy
    leaves; the companion beats the forced path reversal via the leaves."""
    if k < 2 or k % 2:
        raise OddK(f"k must be even and >= 2, got {k}")
    n = 3 * k + 1
    center = k
    path_edges = [(i, i + 1) for i in range(2 * k)]
    leaf_edges = [(center, 2 * k + 1 + j) for j in range(k)]
    tree = Tree(n, path_edges + leaf_edges)
    start = list(range(n))
    for i in range(1, k + 1):
        start[center - i], start[center + i] = center + i, center - i
    inst = Instance(tree, tuple(start))

    left = [center - 1 - j for j in range(k)]  # p_1 .. p_k
    right = [center + 1 + j for j in range(k)]  # p'_1 .. p'_k
    b = _Builder(start)
    phases = []
    # (1) leaf tokens onto the left arm, left-arm tokens onto the leaves
    phases.append(_exchange(b, center, left, [2 * k + 1 + j for j in range(k)]))
    # (2) those tokens over to the right arm (their homes)
    phases.append(_exchange(b, center, right, [center + 1 + j for j in range(k)]))
    # (3) right-arm tokens to the left arm (their homes); leaf tokens return reversed
    phases.append(_exchange(b, center, left, [center - 1 - j for j in range(k)]))
    # (4) fix the reversed leaf tokens: k/2 locked 2-cycles, 3 swaps each
    before = len(b.seq)
    for j in range(k // 2):
        lo, hi = 2 * k + 1 + j, 3 * k - j
        b.swap(center, lo)
        b.swap(center, hi)
        b.swap(center, lo)
    phases.append(len(b.seq) - before)
    assert is_identity(b.plc)
    assert len(b.seq) == (3 * k * k + 18 * k) // 2  # 1.5 k^2 + 9 k
    return TkOutput(inst, b.seq, 2 * k * k + k, tuple(phases))


def gen_Tkb(k: int, b: int, fix_even: bool = False) -> TkbOutput:
    """b arms of k vertices plus k happy leaves; each arm's tokens move one
    arm over, and the companion rotates them through the leaves.

    Odd b leaves the leaf tokens sorted after the rotation.  With
    ``fix_even`` an even b is accepted and the scrambled leaf tokens are
    repaired by a final star solve (3 swaps per leaf 2-cycle).
    """
    if b % 2 == 0 and not fix_even:
        raise EvenB(f"b must be odd, got {b}")
    if b < 3 or k < 1:
        raise TreeswapError(f"need b >= 3 and k >= 1, got k={k}, b={b}")
    n = b * k + k + 1
    center = 0

    def arm_vertex(i: int, j: int) -> int:  # arm i (1-based), distance j (1-based)
        return 1 + (i - 1) * k + (j - 1)

    leaves = [1 + b * k + j for j in range(k)]
    edges = []
    for i in range(1, b + 1):
        edges.append((center, arm_vertex(i, 1)))
        edges.extend((arm_vertex(i, j), arm_vertex(i, j + 1)) for j in range(1, k))
    edges.extend((center, lf) for lf in leaves)
    tree = Tree(n, edges)

    start = list(range(n))
    for i in range(1, b + 1):
        nxt = i % b + 1
        for j in range(1, k + 1):
            start[arm_vertex(i, j)] = arm_vertex(nxt, j)
    inst = Instance(tree, tuple(start))

    sim = _Builder(start)
    step = 0
    # step 1: leaf tokens onto arm 1; arm-1 tokens onto the leaves
    step = _exchange(sim, center, [arm_vertex(1, j) for j in range(1, k + 1)], leaves)
    # steps 2..b: tokens on the leaves move to their home arm
    for i in range(2, b + 1):
        arm = [arm_vertex(i, j) for j in range(1, k + 1)]
        _exchange(sim, center, arm, arm)
    # step b+1: last arm's tokens home on arm 1; leaf tokens return
    arm1 = [arm_vertex(1, j) for j in range(1, k + 1)]
    _exchange(sim, center, arm1, arm1)
    fixup = 0
    if b % 2 == 0:
        before = len(sim.seq)
        while True:
            unhappy = [lf for lf in leaves if sim.plc[lf] != lf]
            if sim.plc[center] != center:
                sim.swap(center, sim.plc[center])
            elif unhappy:
                sim.swap(center, min(unhappy))
            else:
                break
        fixup = len(sim.seq) - before
    assert is_identity(sim.plc)
    assert len(sim.seq) == (b + 1) * step + fixup
    return TkbOutput(inst, sim.seq, step, k, b, fixup)


# ---------------------------------------------------------------------------
# vertex-cover reduction


@dataclass(frozen=True)
class VertexCoverInput:
    """A simple undirected graph and a cover-size budget q."""

    n: int
    edges: tuple[tuple[int, int], ...]
    q: int

    def __init__(self, n: int, edges: Iterable[Sequence[int]], q: int):
        object.__setattr__(self, "n", int(n))
        norm = []
        for e in edges:
            x, y = int(e[0]), int(e[1])
            if x == y:
                raise TreeswapError(f"self-loop at {x}")
            if not (0 <= x < n and 0 <= y < n):
                raise TreeswapError(f"edge ({x},{y}) out of range")
            norm.append((min(x, y), max(x, y)))
        norm.sort()
        if len(set(norm)) != len(norm):
            raise TreeswapError("duplicate edge")
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "q", int(q))


@dataclass(frozen=True)
class ReductionOutput:
    instance: Instance
    source: VertexCoverInput
    L_r: int
    darkgray_weight: Fraction
    beta: int
    beta_prime: int
    budget: int
    path_len: int
    root: int
    v_vertex: tuple[int, ...]  # graph vertex -> V-vertex id
    e_children: tuple[tuple[int, int], ...]  # per edge: child under x, under y

    @property
    def darkgray_tokens(self) -> frozenset[int]:
        return frozenset(self.v_vertex)


def edge_colour(x: int, y: int) -> str:
    return f"edge-{min(x, y)}-{max(x, y)}"


def build_vc_reduction(vc: VertexCoverInput, L_r: int | None = None) -> ReductionOutput:
    """Weighted coloured tree instance that has a cheap solution iff the
    source graph has a vertex cover of size q.

    Ordinary tokens weigh 1/2 each (a plain swap costs 1); darkgray tokens
    weigh n^5 + 1/2 so that displacing one and bringing it back costs
    2(1 + n^5).  ``L_r`` defaults to n^7; overriding it shrinks the instance
    for structural tests but voids the hardness argument.
    """
    n, m = vc.n, len(vc.edges)
    if n < 2 or m == 0:
        raise TreeswapError("reduction needs n >= 2 and at least one edge")
    if L_r is None:
        L_r = n**7
    if L_r < m:
        raise TreeswapError(f"L_r must be at least |E|={m}")

    path_len = 2 * L_r + 2 * m - 1
    root = L_r + m - 1  # 0-indexed path position identified with the tree root
    v_vertex = tuple(path_len + g for g in range(n))
    e_children = []
    nxt = path_len + n
    for x, y in vc.edges:
        e_children.append((nxt, nxt + 1))
        nxt += 2
    total = nxt

    edges = [(i, i + 1) for i in range(path_len - 1)]
    edges += [(root, v_vertex[g]) for g in range(n)]
    for (x, y), (cx, cy) in zip(vc.edges, e_children):
        edges.append((v_vertex[x], cx))
        edges.append((v_vertex[y], cy))
    tree = Tree(total, edges)

    ecolours = [edge_colour(x, y) for x, y in vc.edges]
    token_colour: list = ["blue"] * total
    vertex_colour: list = ["blue"] * total
    for i in range(L_r):
        token_colour[i] = "red"
    for j, c in enumerate(ecolours):
        token_colour[path_len - m + j] = c
    for g in range(n):
        token_colour[v_vertex[g]] = vertex_colour[v_vertex[g]] = "darkgray"
    for (cx, cy), c in zip(e_children, ecolours):
        token_colour[cx] = token_colour[cy] = c
        vertex_colour[cx] = vertex_colour[cy] = c
    for j, c in enumerate(ecolours):
        vertex_colour[j] = c
    for i in range(path_len - L_r, path_len):
        vertex_colour[i] = "red"

    weights: dict = {"red": Fraction(1, 2), "blue": Fraction(1, 2)}
    weights["darkgray"] = n**5 + Fraction(1, 2)
    for c in ecolours:
        weights[c] = Fraction(1, 2)
    inst = Instance(
        tree,
        tuple(range(total)),
        Colouring(vertex_colour, token_colour),
        WeightTable(weights),
    )
    beta = L_r * (2 * m + L_r - 1)
    beta_prime = m * m + 3 * m - 2 * n
    budget = beta + 2 * beta_prime + 2 * vc.q * (1 + n**5)
    return ReductionOutput(
        instance=inst,
        source=vc,
        L_r=L_r,
        darkgray_weight=weights["darkgray"],
        beta=beta,
        beta_prime=beta_prime,
        budget=budget,
        path_len=path_len,
        root=root,
        v_vertex=v_vertex,
        e_children=tuple(e_children),
    )


def vc_to_sequence(red: ReductionOutput, cover: Iterable[int]) -> np.ndarray:
    """Three-phase schedule realizing the cover: evict darkgray tokens, pull
    one token per edge colour onto the path, sweep the reds right (which
    carries the pulled tokens to the left end), then restore the tree.

    Returns an (N, 2) int32 swap array; N is dominated by the sweep's
    L_r * (L_r + 2|E| - 1) swaps.
    """
    cover = sorted(set(cover))
    src = red.source
    if len(cover) != src.q:
        raise NotACover(f"cover has size {len(cover)}, expected q={src.q}")
    for x, y in src.edges:
        if x not in cover and y not in cover:
            raise NotACover(f"edge ({x},{y}) is uncovered")
    m = len(src.edges)
    L_r = red.L_r
    root = red.root
    inst = red.instance

    supplier = {}  # edge index -> covering graph vertex (smallest)
    for idx, (x, y) in enumerate(src.edges):
        supplier[idx] = x if x in cover else y
    supplies: dict[int, list[int]] = {g: [] for g in cover}
    for idx in range(m):
        supplies[supplier[idx]].append(idx)

    def child_of(idx: int, g: int) -> int:
        x, y = src.edges[idx]
        cx, cy = red.e_children[idx]
        return cx if g == x else cy

    eviction_child = {}
    for g in cover:
        if supplies[g]:
            eviction_child[g] = child_of(supplies[g][0], g)
        else:
            eviction_child[g] = min(
                child_of(idx, g) for idx, e in enumerate(src.edges) if g in e
            )

    b = _Builder(inst.start)
    # phase 1a: evictions
    for g in cover:
        b.swap(red.v_vertex[g], eviction_child[g])
    # phase 1b: pull one token per edge colour to the slot block ending at the root
    for idx in range(m):
        g = supplier[idx]
        child = child_of(idx, g)
        slot = L_r + idx
        if eviction_child[g] != child:
            b.swap(child, red.v_vertex[g])
        b.swap(red.v_vertex[g], root)
        for cur in range(root, slot, -1):
            b.swap(cur - 1, cur)
    phase1 = list(b.seq)

    # phase 2: sweep every red token to the right end (emitted in bulk)
    width = red.path_len - L_r  # L_r + 2|E| - 1
    for i in range(L_r - 1, -1, -1):
        seg = b.plc[i : i + width + 1]
        b.plc[i : i + width] = seg[1:]
        b.plc[i + width] = seg[0]
    for v, t in enumerate(b.plc):
        b.pos[t] = v
    starts = np.arange(L_r - 1, -1, -1, dtype=np.int64)
    offs = np.arange(width, dtype=np.int64)
    sweep_u = (starts[:, None] + offs[None, :]).reshape(-1)
    b.seq = []

    # phase 3: route the right-block copies into the tree; darkgray returns last
    copies = []  # (position, edge idx)
    for idx in range(m):
        tok = red.path_len - m + idx  # start vertex of the idx-th copy
        copies.append((b.pos[tok], idx))
    eviction_targets = {eviction_child[g] for g in cover}
    ordered = sorted(
        copies, key=lambda pi: (child_of(pi[1], supplier[pi[1]]) in eviction_targets, pi[0])
    )
    for _, idx in ordered:
        g = supplier[idx]
        tok = red.path_len - m + idx
        while b.pos[tok] != root:
            cur = b.pos[tok]
            b.swap(cur - 1, cur)
        b.swap(root, red.v_vertex[g])
        b.swap(red.v_vertex[g], child_of(idx, g))
    # spurious evictions (cover vertices supplying no edge) are undone
    for g in cover:
        if not supplies[g]:
            b.swap(eviction_child[g], red.v_vertex[g])
    phase3 = list(b.seq)

    if not inst.is_goal(b.plc):
        raise AssertionError("reduction schedule failed to reach the goal")
    seq = np.concatenate(
        [
            np.array(phase1, dtype=np.int32).reshape(-1, 2),
            np.column_stack([sweep_u, sweep_u + 1]).astype(np.int32),
            np.array(phase3, dtype=np.int32).reshape(-1, 2),
        ]
    )
    return seq


def vc_schedule_cost(red: ReductionOutput, seq: np.ndarray) -> int | Fraction:
    return apply_sequence(red.instance, seq).cost


def sequence_to_cover(red: ReductionOutput, seq) -> tuple[int, ...]:
    """Graph vertices whose darkgray token moved; the reduction's reverse map."""
    inst = red.instance
    res = apply_sequence(inst, seq)
    if res.cost > red.budget:
        raise OverBudget(f"cost {res.cost} exceeds budget {red.budget}")
    if not inst.is_goal(res.placement):
        raise NotSorted("sequence does not reach a colour-matching configuration")
    dark = red.darkgray_tokens
    moved: set[int] = set()
    plc = list(inst.start)
    if isinstance(seq, np.ndarray):
        pairs = zip(seq[:, 0].tolist(), seq[:, 1].tolist())
    else:
        pairs = iter(seq)
    vhome = {vid: g for g, vid in enumerate(red.v_vertex)}
    for u, v in pairs:
        a, b = plc[u], plc[v]
        if a in dark:
            moved.add(vhome[a])
        if b in dark:
            moved.add(vhome[b])
        plc[u], plc[v] = b, a
    return tuple(sorted(moved))
