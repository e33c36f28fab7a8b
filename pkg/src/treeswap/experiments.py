"""Experiment harness: the happy-leaf conjecture search and the
approximation-ratio tables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from . import backends
from .core import Tree
from .errors import TooLarge
from . import approx, constructions, oracle

UNSEEN = 255


def enumerate_free_trees(n: int) -> list[Tree]:
    """All unlabeled trees on n vertices, one representative each."""
    if n < 1:
        raise TooLarge("need n >= 1")
    if n == 1:
        return [Tree(1, [])]
    if n == 2:
        return [Tree(2, [(0, 1)])]
    out = []
    for g in nx.nonisomorphic_trees(n):
        mapping = {v: i for i, v in enumerate(sorted(g.nodes()))}
        out.append(Tree(n, [(mapping[u], mapping[v]) for u, v in g.edges()]))
    return out


@dataclass(frozen=True)
class Counterexample:
    tree: Tree
    placement: tuple[int, ...]
    unrestricted: int
    restricted: int


def happy_leaf_tree() -> Tree:
    """The 10-vertex counterexample tree (path plus one extra leaf)."""
    return Tree(10, [(i, i + 1) for i in range(8)] + [(2, 9)])


def _leaf_subset_tables(tree: Tree, fact: np.ndarray):
    """Distance tables of the tree with each leaf subset deleted.

    Fixing a placement's happy leaves is the same as solving on the tree
    with those leaves removed, so one table per subset answers every
    placement sharing that happy set.
    """
    leaves = [v for v in tree.leaves] if tree.n > 1 else []
    nl = len(leaves)
    newid = np.full((1 << nl, tree.n), -1, dtype=np.int64)
    sub_sizes = np.zeros(1 << nl, dtype=np.int64)
    tables = []
    offsets = np.zeros((1 << nl) + 1, dtype=np.int64)
    for mask in range(1 << nl):
        removed = {leaves[i] for i in range(nl) if mask >> i & 1}
        kept = [v for v in range(tree.n) if v not in removed]
        for j, v in enumerate(kept):
            newid[mask, v] = j
        m = len(kept)
        sub_sizes[mask] = m
        if m <= 1:
            tables.append(np.zeros(max(1, int(fact[m])), dtype=np.uint8))
        else:
            remap = {v: j for j, v in enumerate(kept)}
            sub_tree = Tree(
                m,
                [
                    (remap[u], remap[v])
                    for u, v in tree.edges
                    if u not in removed and v not in removed
                ],
            )
            tables.append(oracle.all_distances(sub_tree).dist)
        offsets[mask + 1] = offsets[mask] + tables[-1].shape[0]
    return (
        np.array(leaves, dtype=np.int64),
        newid,
        sub_sizes,
        offsets[:-1],
        np.concatenate(tables) if tables else np.zeros(1, dtype=np.uint8),
    )


def scan_tree_for_counterexamples(tree: Tree, limit: int = 1 << 20) -> list[Counterexample]:
    """All placements where fixing the happy leaves costs extra swaps."""
    if tree.n > 10:
        raise TooLarge(f"n={tree.n} exceeds the happy-leaf search cap of 10")
    fact = backends.factorials(tree.n)
    full = oracle.all_distances(tree).dist
    leaves, newid, sub_sizes, offsets, tables = _leaf_subset_tables(tree, fact)
    out_ranks = np.empty(limit, dtype=np.int64)
    count = backends.happy_leaf_scan(
        tree.n, full, leaves, newid, sub_sizes, offsets, tables, fact, out_ranks
    )
    found = []
    for r in out_ranks[: min(count, limit)].tolist():
        placement = backends.unrank_perm(r, tree.n)
        happy = {v for v in leaves.tolist() if placement[v] == v}
        kept = [v for v in range(tree.n) if v not in happy]
        remap = {v: j for j, v in enumerate(kept)}
        if len(kept) <= 1:
            restricted = 0
        elif happy:
            sub_tree = Tree(
                len(kept),
                [
                    (remap[u], remap[v])
                    for u, v in tree.edges
                    if u not in happy and v not in happy
                ],
            )
            sub_placement = tuple(remap[placement[v]] for v in kept)
            restricted = oracle.all_distances(sub_tree).lookup(sub_placement)
        else:
            restricted = int(full[r])
        found.append(
            Counterexample(tree, placement, int(full[r]), restricted)
        )
    return found


def happy_leaf_search(max_n: int = 8, trees: Iterable[Tree] | None = None) -> dict:
    """Search every tree (or the given ones) for happy-leaf counterexamples."""
    if trees is None:
        if max_n > 10:
            raise TooLarge("happy-leaf search is capped at n = 10")
        trees = [t for n in range(2, max_n + 1) for t in enumerate_free_trees(n)]
    else:
        trees = list(trees)
    counterexamples = []
    for tree in trees:
        counterexamples.extend(scan_tree_for_counterexamples(tree))
    return {
        "trees_checked": len(trees),
        "counterexample_count": len(counterexamples),
        "counterexamples": [
            {
                "n": ce.tree.n,
                "edges": [list(e) for e in ce.tree.edges],
                "placement": list(ce.placement),
                "unrestricted": ce.unrestricted,
                "restricted": ce.restricted,
            }
            for ce in counterexamples
        ],
    }


def ratio_rows_tk(ks: Sequence[int]) -> list[dict]:
    """Reversal cost (what happy-leaf-fixing algorithms pay) vs the companion."""
    rows = []
    for k in ks:
        out = constructions.gen_Tk(k)
        companion = len(out.companion)
        rows.append(
            {
                "family": "tk",
                "k": k,
                "b": "",
                "n": out.instance.n,
                "companion": companion,
                "reversal": out.reversal_cost,
                "ratio": round(out.reversal_cost / companion, 6),
            }
        )
    return rows


def ratio_rows_tkb(
    ks: Sequence[int], bs: Sequence[int], with_happy_swap: bool = False
) -> list[dict]:
    rows = []
    for k, b in zip(ks, bs):
        out = constructions.gen_Tkb(k, b, fix_even=True)
        companion = len(out.companion)
        cycle_len = len(approx.cycle_algorithm(out.instance))
        row = {
            "family": "tkb",
            "k": k,
            "b": b,
            "n": out.instance.n,
            "companion": companion,
            "cycle": cycle_len,
            "ratio": round(cycle_len / companion, 6),
        }
        if with_happy_swap:
            hs = len(approx.happy_swap_algorithm(out.instance))
            row["happy_swap"] = hs
            row["happy_ratio"] = round(hs / companion, 6)
        rows.append(row)
    return rows
