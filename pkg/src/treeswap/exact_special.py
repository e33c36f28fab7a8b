"""Polynomial-time exact solvers for paths, stars, brooms, and their
weighted/coloured variants.  Every solver returns a witnessing swap sequence.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    Colour,
    FAMILY_BROOM,
    FAMILY_PATH,
    FAMILY_STAR,
    Instance,
    Swap,
    Tree,
    _from_half,
    cycle_decomposition,
    placement_cycles,
    star_center,
    weighted_instance,
)
from .errors import ColouredInstance, NotABroom, NotAPath, NotAStar, TraceMismatch


def _require_standard(inst: Instance, solver: str) -> None:
    """Distinct colours whose goal is the identity (plain token swapping)."""
    if inst.colouring is None:
        return
    if not inst.distinct_colours:
        raise ColouredInstance(f"{solver} needs distinct colours")
    if not inst.is_goal(tuple(range(inst.n))):
        raise ColouredInstance(
            f"{solver} sorts tokens to their home vertices; this colouring has a"
            " different goal, use a coloured solver"
        )


class _Sim:
    """Mutable placement with a recorded swap sequence."""

    __slots__ = ("plc", "pos", "seq")

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


# ---------------------------------------------------------------------------
# paths


def _path_order(tree: Tree) -> list[int]:
    """Vertices in path order, starting from the smaller endpoint."""
    if tree.n == 1:
        return [0]
    ends = [v for v in range(tree.n) if tree.degree[v] == 1]
    start = min(ends)
    order = [start]
    prev = -1
    cur = start
    while len(order) < tree.n:
        nxt = next(w for w in tree.adjacency[cur] if w != prev)
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def _require_path(tree: Tree) -> list[int]:
    if tree.n > 1 and max(tree.degree) > 2:
        raise NotAPath("tree has a vertex of degree > 2")
    return _path_order(tree)


def _bubble(order: list[int], keys: list, tokens: list | None = None):
    """Adjacent-transposition sort of ``keys``; emits tree-edge swaps.

    When ``tokens`` is given it is permuted alongside, so callers can price
    each swap by the tokens involved.
    """
    n = len(keys)
    swaps: list[Swap] = []
    swapped = True
    while swapped:
        swapped = False
        for j in range(n - 1):
            if keys[j] > keys[j + 1]:
                keys[j], keys[j + 1] = keys[j + 1], keys[j]
                if tokens is not None:
                    tokens[j], tokens[j + 1] = tokens[j + 1], tokens[j]
                swaps.append((order[j], order[j + 1]))
                swapped = True
    return swaps


def solve_path(inst: Instance) -> list[Swap]:
    """Inversion-count sort along the path; optimal for distinct colours."""
    _require_standard(inst, "solve_path")
    order = _require_path(inst.tree)
    posof = {v: i for i, v in enumerate(order)}
    keys = [posof[inst.start[v]] for v in order]
    return _bubble(order, keys)


def inversion_count(inst: Instance) -> int:
    order = _require_path(inst.tree)
    posof = {v: i for i, v in enumerate(order)}
    keys = [posof[inst.start[v]] for v in order]
    return sum(
        1
        for i in range(len(keys))
        for j in range(i + 1, len(keys))
        if keys[i] > keys[j]
    )


def solve_weighted_coloured_path(inst: Instance) -> list[Swap]:
    """Colour-forced assignment, then weighted adjacent-transposition sort.

    The i-th token of a colour along the path must go to the i-th vertex of
    that colour; the cost is the sum of both token weights over all inverted
    pairs, which the bubble sort realizes exactly.
    """
    if inst.colouring is None:
        raise ColouredInstance("solve_weighted_coloured_path needs a colouring")
    order = _require_path(inst.tree)
    vc = inst.colouring.vertex_colour
    tc = inst.colouring.token_colour
    vertex_slots: dict[Colour, list[int]] = defaultdict(list)
    for i, v in enumerate(order):
        vertex_slots[vc[v]].append(i)
    taken: dict[Colour, int] = defaultdict(int)
    targets = []
    for v in order:
        c = tc[v]
        targets.append(vertex_slots[c][taken[c]])
        taken[c] += 1
    return _bubble(order, targets)


# ---------------------------------------------------------------------------
# stars


def _require_star(tree: Tree) -> tuple[int, list[int]]:
    """Center and leaves of a star-shaped tree (paths of <= 3 vertices count)."""
    big = [v for v in range(tree.n) if tree.degree[v] > 1]
    if len(big) > 1:
        raise NotAStar("tree has more than one internal vertex")
    center = star_center(tree)
    leaves = [v for v in range(tree.n) if v != center]
    return center, leaves


def _star_sort(sim: _Sim, center: int, leaves: Sequence[int]) -> None:
    """Home the center token; when the center rests, shove the lowest unhappy leaf."""
    while True:
        t = sim.plc[center]
        if t != center:
            sim.swap(center, t)
            continue
        unhappy = [v for v in leaves if sim.plc[v] != v]
        if not unhappy:
            return
        sim.swap(center, min(unhappy))


def solve_star(inst: Instance) -> list[Swap]:
    """Optimal star sort: n_U + l swaps."""
    _require_standard(inst, "solve_star")
    center, leaves = _require_star(inst.tree)
    sim = _Sim(inst.start)
    _star_sort(sim, center, leaves)
    return sim.seq


@dataclass(frozen=True)
class StarWeightSummary:
    """Inputs and outcome of the three-strategy weighted star solve."""

    d_w: int | Fraction
    w_x: int | Fraction
    w_a: int | Fraction
    w_h: int | Fraction | None
    l: int
    strategy: int

    def formula_cost(self) -> int | Fraction:
        """D_w + 2w(x) + 2*min(w(x)(l-1), w(a)(l-1), w(h)(l+1))."""
        terms = [self.w_x * (self.l - 1), self.w_a * (self.l - 1)]
        if self.w_h is not None:
            terms.append(self.w_h * (self.l + 1))
        return self.d_w + 2 * self.w_x + 2 * min(terms)


def _home_center_until(sim: _Sim, center: int, token: int) -> None:
    while sim.plc[center] != token:
        sim.swap(center, sim.plc[center])


def _unlock_cycle(sim: _Sim, center: int, cycle: Sequence[int]) -> None:
    """Solve one locked cycle using whatever token currently rests at the center."""
    unlocker = sim.plc[center]
    entry = min(cycle)
    sim.swap(center, entry)
    _home_center_until(sim, center, unlocker)


def solve_weighted_star(inst: Instance) -> tuple[list[Swap], StarWeightSummary]:
    """Weighted star solve via the cheapest of three unlocking strategies."""
    _require_standard(inst, "solve_weighted_star")
    if inst.weights is None:
        raise ColouredInstance("solve_weighted_star needs token weights")
    center, leaves = _require_star(inst.tree)
    dec = cycle_decomposition(inst)
    whalf = [inst.weights.half_units(c) for c in inst.token_colour_by_id]

    x_tokens = dec.unlocked
    locked = sorted((c for c in dec.locked if len(c) > 1), key=min)
    l = len(locked)
    happy = [v for v in leaves if inst.start[v] == v]
    unhappy_tokens = [inst.start[v] for v in leaves if inst.start[v] != v]
    active = unhappy_tokens + [inst.start[center]]

    x = min(x_tokens, key=lambda t: (whalf[t], t))
    a = min(active, key=lambda t: (whalf[t], t))
    h = min(happy, key=lambda t: (whalf[t], t)) if happy else None

    # strategy terms in half-units; ties resolve to the lowest strategy number
    candidates = [(whalf[x] * (l - 1), 1)]
    if whalf[a] < whalf[x]:
        candidates.append((whalf[a] * (l - 1), 2))
    if h is not None:
        candidates.append((whalf[h] * (l + 1), 3))
    _, strategy = min(candidates)

    sim = _Sim(inst.start)
    _home_center_until(sim, center, x)
    if strategy == 1:
        for cyc in locked:
            _unlock_cycle(sim, center, cyc)
    elif strategy == 2:
        cycle_of = {t: cyc for cyc in locked for t in cyc}
        sim.swap(center, sim.pos[a])
        for cyc in locked:
            if cyc is not cycle_of[a]:
                _unlock_cycle(sim, center, cyc)
        # solving a's own cycle returns x to the center
        _home_center_until(sim, center, x)
    else:
        sim.swap(center, h)
        for cyc in locked:
            _unlock_cycle(sim, center, cyc)
        sim.swap(center, h)
    _home_center_until(sim, center, center)

    summary = StarWeightSummary(
        d_w=_dw_from_half(inst, whalf),
        w_x=_from_half(whalf[x]),
        w_a=_from_half(whalf[a]),
        w_h=_from_half(whalf[h]) if h is not None else None,
        l=l,
        strategy=strategy,
    )
    assert sim.plc == list(range(inst.n))
    return sim.seq, summary


def _dw_from_half(inst: Instance, whalf: list[int]) -> int | Fraction:
    dm = inst.tree.dist_matrix
    total = 0
    for v, tok in enumerate(inst.start):
        total += int(dm[v, tok]) * whalf[tok]
    return _from_half(total)


# ---------------------------------------------------------------------------
# coloured stars


@dataclass(frozen=True)
class ColourMultigraph:
    """Auxiliary multigraph: a node per colour, an edge per star vertex."""

    edges: tuple[tuple[Colour, Colour, int], ...]  # (vertex colour, token colour, vertex)
    leaf_loops: int
    kappa: int


def _colour_multigraph(inst: Instance, center: int) -> ColourMultigraph:
    vc = inst.colouring.vertex_colour
    tc = inst.colouring.token_colour
    edges = tuple((vc[v], tc[v], v) for v in range(inst.n))
    lam = sum(1 for a, b, v in edges if v != center and a == b)

    # connected components over colour nodes (loops included)
    parent: dict[Colour, Colour] = {}

    def find(c):
        while parent[c] is not c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for a, b, _ in edges:
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra is not rb:
            parent[ra] = rb
    comp_nodes: dict[Colour, set[Colour]] = defaultdict(set)
    for c in parent:
        comp_nodes[find(c)].add(c)
    center_comp = find(vc[center])
    kappa = sum(
        1
        for root, nodes in comp_nodes.items()
        if root != center_comp and len(nodes) > 1
    )
    return ColourMultigraph(edges, lam, kappa)


def _euler_tour(out_edges: dict[Colour, list[tuple[Colour, int]]], start: Colour) -> list[int]:
    """Hierholzer tour of a connected Eulerian directed multigraph.

    Returns the traversed edge labels (star vertices) in tour order.
    """
    ptr = {u: 0 for u in out_edges}
    stack: list[tuple[Colour, int | None]] = [(start, None)]
    labels: list[int] = []
    while stack:
        u, lab = stack[-1]
        lst = out_edges.get(u, [])
        if ptr.get(u, 0) < len(lst):
            nxt, elab = lst[ptr[u]]
            ptr[u] += 1
            stack.append((nxt, elab))
        else:
            stack.pop()
            if lab is not None:
                labels.append(lab)
    labels.reverse()
    return labels


def coloured_star_assignment(inst: Instance) -> tuple[tuple[int, ...], ColourMultigraph]:
    """Token-vertex assignment minimizing n_U + l (leaf loops become happy leaves)."""
    if inst.colouring is None:
        raise ColouredInstance("coloured star solve needs a colouring")
    center, _ = _require_star(inst.tree)
    graph = _colour_multigraph(inst, center)

    target = [-1] * inst.n
    loop_free: list[tuple[Colour, Colour, int]] = []
    for a, b, v in graph.edges:
        if v != center and a == b:
            target[v] = v
        else:
            loop_free.append((a, b, v))

    out_edges: dict[Colour, list[tuple[Colour, int]]] = defaultdict(list)
    for a, b, v in loop_free:
        out_edges[a].append((b, v))
    for lst in out_edges.values():
        lst.sort(key=lambda e: e[1])

    # component discovery on the loop-free graph, then one tour per component
    seen: set[Colour] = set()
    undirected: dict[Colour, set[Colour]] = defaultdict(set)
    for a, b, _ in loop_free:
        undirected[a].add(b)
        undirected[b].add(a)
    for start in sorted(undirected, key=repr):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in undirected[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        tour = _euler_tour(out_edges, min(comp, key=repr))
        for i, v in enumerate(tour):
            target[v] = tour[(i + 1) % len(tour)]
    assert all(t >= 0 for t in target)
    return tuple(target), graph


def _induced_placement(target: Sequence[int]) -> tuple[int, ...]:
    """Standard instance in which the token on v is named by its target vertex."""
    return tuple(target)


def solve_coloured_star(
    inst: Instance,
) -> tuple[tuple[int, ...], list[Swap], ColourMultigraph]:
    """Optimal coloured star solve: (n - 1 - lambda) + kappa swaps."""
    target, graph = coloured_star_assignment(inst)
    induced = Instance(inst.tree, _induced_placement(target))
    seq = solve_star(induced)
    return target, seq, graph


def solve_weighted_coloured_star(inst: Instance) -> list[Swap]:
    """Assignment ignoring weights, then the weighted star solver."""
    if inst.weights is None:
        raise ColouredInstance("solve_weighted_coloured_star needs weights")
    target, _ = coloured_star_assignment(inst)
    vc = inst.colouring.vertex_colour
    token_weights = [inst.weights.weight(vc[j]) for j in range(inst.n)]
    induced = weighted_instance(inst.tree, _induced_placement(target), token_weights)
    seq, _ = solve_weighted_star(induced)
    return seq


# ---------------------------------------------------------------------------
# brooms


@dataclass(frozen=True)
class BroomOrientation:
    center: int
    star_leaves: tuple[int, ...]
    path: tuple[int, ...]  # center first, then outward along the tail


@dataclass(frozen=True)
class BroomTrace:
    """Per-run bookkeeping for the broom algorithm's swap-count formula."""

    d: dict[int, int]  # path token -> distance from a star leaf to its home
    r: dict[int, int]  # path token -> smaller tokens initially to its right
    s_u: int  # unhomed star tokens outside pure star-leaf cycles
    lucky: int  # executions of the chain step
    w: int  # measured phase-1 swap count
    n_s: int  # tokens in initial cycles confined to star leaves
    l_s: int  # number of those cycles


def broom_orientation(tree: Tree) -> BroomOrientation:
    family = tree.classify()
    if family == FAMILY_PATH:
        order = _path_order(tree)
        return BroomOrientation(order[0], (), tuple(order))
    if family == FAMILY_STAR:
        center, leaves = _require_star(tree)
        return BroomOrientation(center, tuple(leaves), (center,))
    if family != FAMILY_BROOM:
        raise NotABroom(f"tree classifies as {family}")
    center = max(range(tree.n), key=lambda v: tree.degree[v])
    star_leaves = tuple(
        w for w in tree.adjacency[center] if tree.degree[w] == 1
    )
    tail_start = next(w for w in tree.adjacency[center] if tree.degree[w] > 1)
    path = [center, tail_start]
    prev, cur = center, tail_start
    while tree.degree[cur] > 1:
        nxt = next(w for w in tree.adjacency[cur] if w != prev)
        path.append(nxt)
        prev, cur = cur, nxt
    return BroomOrientation(center, star_leaves, tuple(path))


def _broom_stats(inst: Instance, ori: BroomOrientation) -> tuple[dict, dict, int, int, int]:
    """d(p), r(p), S_U, n_S, l_S computed from the initial placement."""
    start = inst.start
    level = {v: 0 for v in ori.star_leaves}
    for i, v in enumerate(ori.path):
        level[v] = i + 1
    home_level = level  # token t's home is vertex t
    path_tokens = set(ori.path)
    star_set = set(ori.star_leaves)

    pos = {t: v for v, t in enumerate(start)}
    d = {p: home_level[p] for p in path_tokens}
    r = {}
    for p in path_tokens:
        lp = level[pos[p]]
        r[p] = sum(
            1
            for t in range(inst.n)
            if home_level[t] < home_level[p] and level[pos[t]] > lp
        )
    n_s = l_s = 0
    for cyc in placement_cycles(start):
        if len(cyc) > 1 and set(cyc) <= star_set:
            l_s += 1
            n_s += len(cyc)
    unhomed_star = sum(1 for t in star_set if pos[t] != t)
    s_u = unhomed_star - n_s  # pure star-leaf cycles are untouched by phase 1
    return d, r, s_u, n_s, l_s


def solve_broom(inst: Instance) -> tuple[list[Swap], BroomTrace]:
    """The homing algorithm for brooms: handle path tokens largest-first, then
    solve the residual star.  Optimal; never moves a happy leaf."""
    _require_standard(inst, "solve_broom")
    ori = broom_orientation(inst.tree)
    center = ori.center
    star_set = set(ori.star_leaves)
    path_index = {v: i for i, v in enumerate(ori.path)}
    d, r, s_u, n_s, l_s = _broom_stats(inst, ori)

    sim = _Sim(inst.start)
    lucky = 0
    # path tokens largest (furthest home) first
    for p in sorted(ori.path, key=lambda v: path_index[v], reverse=True):
        if sim.pos[p] == p:
            continue
        if sim.pos[p] in star_set:
            chain = _centered_star_chain(sim, center, star_set, p)
            if chain is not None:
                for t in chain:
                    sim.swap(center, t)
                lucky += 1
            else:
                sim.swap(sim.pos[p], center)
        while sim.pos[p] != p:
            cur = sim.pos[p]
            sim.swap(cur, ori.path[path_index[cur] + 1])
    w = len(sim.seq)

    unhomed = {t for t in range(inst.n) if sim.pos[t] != t}
    expected = {t for cyc in placement_cycles(inst.start) if len(cyc) > 1 and set(cyc) <= star_set for t in cyc}
    assert unhomed == expected, "phase 1 disturbed a pure star-leaf cycle"

    _star_sort(sim, center, ori.star_leaves)
    assert len(sim.seq) - w == n_s + l_s
    trace = BroomTrace(d=d, r=r, s_u=s_u, lucky=lucky, w=w, n_s=n_s, l_s=l_s)
    return sim.seq, trace


def _centered_star_chain(sim: _Sim, center: int, star_set: set[int], p: int):
    """Chain t_1..t_m with t_1 at the center, each home holding the next,
    ending at ``p``; ``None`` when the chain leaves the star leaves."""
    t = sim.plc[center]
    chain = []
    for _ in range(len(star_set) + 1):
        if t not in star_set:  # a path token (or the center token) breaks the chain
            return None
        chain.append(t)
        occupant = sim.plc[t]
        if occupant == p:
            return chain
        t = occupant
    raise AssertionError("centered star chain failed to terminate")


def broom_count_formula(trace: BroomTrace, inst: Instance) -> int:
    """Recompute the phase-1 count from the start placement; must match the trace."""
    ori = broom_orientation(inst.tree)
    d, r, s_u, n_s, l_s = _broom_stats(inst, ori)
    w = sum(min(d[p], r[p]) for p in d) + s_u - trace.lucky
    if w != trace.w:
        raise TraceMismatch(f"formula gives {w}, measured {trace.w}")
    return w + n_s + l_s
