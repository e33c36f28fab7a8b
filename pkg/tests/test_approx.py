import itertools
import random

import pytest

from treeswap import approx, constructions, oracle
from treeswap.core import Instance, Tree, is_identity
from treeswap.errors import ColouredInstance

from helpers import never_moves_happy_leaves, random_instance, replay

PATH3 = Tree(3, [(0, 1), (1, 2)])
PATH4 = Tree(4, [(0, 1), (1, 2), (2, 3)])
STAR4 = Tree(4, [(0, 3), (1, 3), (2, 3)])

SMALL_TREES = [
    PATH4,
    STAR4,
    Tree(5, [(0, 1), (1, 2), (2, 3), (1, 4)]),
    Tree(6, [(0, 1), (1, 2), (2, 3), (2, 4), (4, 5)]),
]


class TestAkersBound:
    def test_identity(self):
        rep = approx.akers_bound(Instance(PATH4, (0, 1, 2, 3)))
        assert rep.d == 0 and rep.m == 0 and rep.c == 4

    def test_reversed_three_path(self):
        rep = approx.akers_bound(Instance(PATH3, (2, 1, 0)))
        assert rep.d == 4 and rep.c == 2 and rep.m == 3
        assert oracle.optimal(Instance(PATH3, (2, 1, 0))).cost == 3

    def test_sandwich(self):
        for tree in SMALL_TREES:
            table = oracle.all_distances(tree)
            for perm in itertools.permutations(range(tree.n)):
                rep = approx.akers_bound(Instance(tree, perm))
                assert table.lookup(perm) <= rep.m <= rep.d


class TestHappySwap:
    def test_sorted(self):
        assert approx.happy_swap_algorithm(Instance(PATH4, (0, 1, 2, 3))) == []

    def test_reversed_three_path_is_all_happy_swaps(self):
        seq = approx.happy_swap_algorithm(Instance(PATH3, (2, 1, 0)))
        assert len(seq) == 3

    def test_sorts_and_stays_under_bounds(self):
        for tree in SMALL_TREES:
            table = oracle.all_distances(tree)
            for perm in itertools.permutations(range(tree.n)):
                inst = Instance(tree, perm)
                seq = approx.happy_swap_algorithm(inst)
                assert is_identity(replay(inst, seq))
                rep = approx.akers_bound(inst)
                opt = table.lookup(perm)
                assert len(seq) <= rep.m
                assert len(seq) <= 2 * opt or opt == 0

    def test_merging_happy_swap_beats_akers_bound(self):
        # tokens from two different cycles can cross an edge in opposite
        # directions; that swap merges the cycles and drops M by 3, so the
        # run ends below M (and here actually hits the optimum)
        inst = Instance(PATH4, (2, 3, 0, 1))
        rep = approx.akers_bound(inst)
        seq = approx.happy_swap_algorithm(inst)
        assert rep.m == 6
        assert len(seq) == 4 == oracle.optimal(inst).cost

    def test_rejects_coloured(self):
        from treeswap.core import Colouring

        col = Colouring(["a", "a", "b"], ["a", "b", "a"])
        with pytest.raises(ColouredInstance):
            approx.happy_swap_algorithm(Instance(PATH3, (0, 1, 2), col))

    def test_event_driven_matches_naive_rescan(self):
        # the heap-based run must reproduce the scan-in-edge-order semantics
        def naive(inst):
            hop = inst.tree.next_hop
            plc = list(inst.start)
            seq = []
            while True:
                chosen = None
                for u, v in inst.tree.edges:
                    a, b = plc[u], plc[v]
                    if a != u and b != v and hop[u, a] == v and hop[v, b] == u:
                        chosen = (u, v)
                        break
                if chosen is None:
                    for u, v in inst.tree.edges:
                        a, b = plc[u], plc[v]
                        if a != u and b == v and hop[u, a] == v:
                            chosen = (u, v)
                            break
                        if b != v and a == u and hop[v, b] == u:
                            chosen = (u, v)
                            break
                if chosen is None:
                    return seq
                u, v = chosen
                plc[u], plc[v] = plc[v], plc[u]
                seq.append(chosen)

        rng = random.Random(33)
        for _ in range(80):
            inst = random_instance(rng, rng.randint(2, 8))
            assert approx.happy_swap_algorithm(inst) == naive(inst)


class TestCycleAlgorithm:
    def test_adjacent_two_cycle(self):
        inst = Instance(PATH4, (1, 0, 2, 3))
        assert approx.cycle_algorithm(inst) == [(0, 1)]

    def test_tkb_count(self):
        out = constructions.gen_Tkb(2, 3)
        seq = approx.cycle_algorithm(out.instance)
        assert len(seq) == 3 * 4 + 2  # b k^2 + k

    def test_sorts_within_twice_optimal(self):
        for tree in SMALL_TREES:
            table = oracle.all_distances(tree)
            for perm in itertools.permutations(range(tree.n)):
                inst = Instance(tree, perm)
                seq = approx.cycle_algorithm(inst)
                assert is_identity(replay(inst, seq))
                opt = table.lookup(perm)
                assert len(seq) <= 2 * opt

    def test_tokens_stay_within_one_of_their_path(self):
        rng = random.Random(31)
        for _ in range(60):
            n = rng.randint(3, 8)
            inst = random_instance(rng, n)
            tree = inst.tree
            dm = tree.dist_matrix
            path_sets = {}
            for v, tok in enumerate(inst.start):
                path_sets[tok] = set(tree.path_between(v, tok))

            pos = {tok: v for v, tok in enumerate(inst.start)}

            def check(plc, u, v):
                for w in (u, v):
                    tok = plc[w]
                    pos[tok] = w
                    d = min(int(dm[w, x]) for x in path_sets[tok])
                    assert d <= 1, (inst.start, tok, w)

            seq = approx.cycle_algorithm(inst)
            assert is_identity(replay(inst, seq, per_swap=check))


class TestVaughan:
    def test_sorted(self):
        assert approx.vaughan_algorithm(Instance(PATH4, (0, 1, 2, 3))) == []

    def test_reversed_three_path_envelope(self):
        inst = Instance(PATH3, (2, 1, 0))
        seq = approx.vaughan_algorithm(inst)
        assert is_identity(replay(inst, seq))
        assert 2 <= len(seq) <= 4  # D/2 .. D with D = 4

    def test_envelope_exhaustive(self):
        for tree in SMALL_TREES:
            for perm in itertools.permutations(range(tree.n)):
                inst = Instance(tree, perm)
                rep = approx.akers_bound(inst)
                seq = approx.vaughan_algorithm(inst)
                assert is_identity(replay(inst, seq))
                assert (rep.d + 1) // 2 <= len(seq) <= rep.d or rep.d == 0


class TestHappyLeafFixedness:
    def test_none_of_the_three_moves_a_happy_leaf(self):
        rng = random.Random(32)
        algos = [
            approx.happy_swap_algorithm,
            approx.cycle_algorithm,
            approx.vaughan_algorithm,
        ]
        for _ in range(60):
            inst = random_instance(rng, rng.randint(3, 9))
            for algo in algos:
                assert never_moves_happy_leaves(inst, algo(inst)), algo.__name__


class TestChitturi:
    def test_star(self):
        assert approx.chitturi_bound(STAR4) == 4

    def test_path4(self):
        gamma = approx.chitturi_bound(PATH4)
        assert gamma >= oracle.diameter(PATH4) == 6

    def test_dominates_diameter_exhaustively(self):
        from treeswap.experiments import enumerate_free_trees

        for n in range(2, 7):
            for tree in enumerate_free_trees(n):
                assert approx.chitturi_bound(tree) >= oracle.diameter(tree)
