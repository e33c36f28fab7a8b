import itertools
import random

import numpy as np
import pytest

from treeswap import oracle
from treeswap.core import Colouring, Instance, Tree, apply_sequence, weighted_instance
from treeswap.errors import TooLarge, Unreachable

from helpers import random_instance, random_placement, random_tree

STAR4 = Tree(4, [(0, 3), (1, 3), (2, 3)])
PATH4 = Tree(4, [(0, 1), (1, 2), (2, 3)])


def test_sorted_start_costs_nothing():
    res = oracle.optimal(Instance(PATH4, (0, 1, 2, 3)))
    assert res.cost == 0 and res.swaps == []


def test_path3_table():
    table = oracle.all_distances(Tree(3, [(0, 1), (1, 2)]))
    assert table.max_distance() == 3
    assert table.lookup((2, 1, 0)) == 3


def test_star4_diameter():
    assert oracle.diameter(STAR4) == 4


def test_path_diameters():
    assert oracle.diameter(Tree(2, [(0, 1)])) == 1
    assert oracle.diameter(PATH4) == 6


def test_optimal_matches_distance_table_exhaustively():
    trees = (
        STAR4,
        PATH4,
        Tree(5, [(0, 1), (1, 2), (1, 3), (3, 4)]),
        Tree(6, [(0, 1), (1, 2), (2, 3), (2, 4), (4, 5)]),
    )
    for tree in trees:
        table = oracle.all_distances(tree)
        for perm in itertools.permutations(range(tree.n)):
            res = oracle.optimal(Instance(tree, perm))
            assert res.cost == table.lookup(perm)
            final = apply_sequence(Instance(tree, perm), res.swaps)
            assert final.placement == tuple(range(tree.n))
            assert final.length == res.cost


def test_automorphism_invariance():
    # relabeling the star's leaves permutes placements without changing cost
    table = oracle.all_distances(STAR4)
    sigma = {0: 1, 1: 2, 2: 0, 3: 3}
    for perm in itertools.permutations(range(4)):
        image = [0] * 4
        for v, t in enumerate(perm):
            image[sigma[v]] = sigma[t]
        assert table.lookup(perm) == table.lookup(image)


def test_weighted_uniform_weight_scales_unweighted():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(2, 6)
        tree = random_tree(rng, n)
        perm = random_placement(rng, n)
        w = rng.randint(1, 4)
        base = oracle.optimal(Instance(tree, perm)).cost
        scaled = oracle.optimal(weighted_instance(tree, perm, [w] * n)).cost
        assert scaled == 2 * w * base


def test_restricted_never_beats_unrestricted():
    rng = random.Random(6)
    for _ in range(40):
        n = rng.randint(3, 7)
        inst = random_instance(rng, n)
        free = oracle.optimal(inst).cost
        banned = [rng.randrange(n)]
        try:
            restricted = oracle.optimal(inst, forbidden_vertices=banned).cost
        except Unreachable:
            continue
        assert restricted >= free


def test_unreachable_goal():
    inst = Instance(Tree(3, [(0, 1), (1, 2)]), (2, 1, 0))
    with pytest.raises(Unreachable):
        oracle.optimal(inst, forbidden_vertices=[1])


def test_too_large():
    tree = Tree(11, [(i, i + 1) for i in range(10)])
    with pytest.raises(TooLarge):
        oracle.all_distances(tree)
    with pytest.raises(TooLarge):
        oracle.optimal(Instance(tree, tuple(range(11))))


def test_weighted_cap_is_smaller():
    tree = Tree(9, [(i, i + 1) for i in range(8)])
    inst = weighted_instance(tree, tuple(range(9)), [1] * 9)
    with pytest.raises(TooLarge):
        oracle.optimal(inst)
    assert oracle.optimal(inst, cap=9).cost == 0


def test_coloured_goal_is_any_colour_match():
    # two tokens of one colour: swapping them is never needed
    tree = Tree(3, [(0, 1), (1, 2)])
    col = Colouring(["a", "b", "a"], ["a", "a", "b"])
    inst = Instance(tree, (0, 1, 2), col)
    res = oracle.optimal(inst)
    assert res.cost == 1  # move b from v2 to v1; never swap the two a tokens
    final = apply_sequence(inst, res.swaps).placement
    assert inst.is_goal(final)


def test_distinct_but_misaligned_colouring():
    # distinct colours whose goal is not the identity placement
    tree = Tree(3, [(0, 1), (1, 2)])
    col = Colouring(["x", "y", "z"], ["y", "x", "z"])
    inst = Instance(tree, (0, 1, 2), col)
    assert oracle.optimal(inst).cost == 1


def test_backends_agree(monkeypatch):
    rng = random.Random(9)
    trees = [random_tree(rng, n) for n in (4, 5, 6) for _ in range(3)]
    for tree in trees:
        monkeypatch.setenv("TREESWAP_BACKEND", "numba")
        fast = oracle.all_distances(tree).dist
        monkeypatch.setenv("TREESWAP_BACKEND", "numpy")
        slow = oracle.all_distances(tree).dist
        assert np.array_equal(fast, slow)


def test_backend_env_validation(monkeypatch):
    from treeswap import backends

    monkeypatch.setenv("TREESWAP_BACKEND", "cuda")
    with pytest.raises(ValueError):
        backends.active_backend()


def test_states_expanded_counts_visited():
    res = oracle.optimal(Instance(PATH4, (1, 0, 2, 3)))
    assert res.cost == 1
    assert 0 < res.states_expanded <= 24


def test_half_distance_sum_is_a_lower_bound():
    from treeswap.core import distance_metrics

    rng = random.Random(77)
    for _ in range(60):
        inst = random_instance(rng, rng.randint(2, 7))
        d, _ = distance_metrics(inst)
        assert oracle.optimal(inst).cost >= (d + 1) // 2
