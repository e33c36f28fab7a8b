"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s``.  Two sub-checks are
expected to fail and carry their analysis inline: the happy-swap length is
not always equal to the Akers-Krishnamurthy bound (a happy swap can merge
two cycles), and the reduction schedule costs slightly less than the
closed-form budget.
"""

import itertools
import os
import random

import pytest

from treeswap import approx, constructions as con, exact_special as ex
from treeswap import experiments as exp, oracle
from treeswap.core import (
    Colouring,
    Instance,
    Tree,
    WeightTable,
    apply_sequence,
    cycle_decomposition,
    is_identity,
    weighted_instance,
)

from helpers import (
    never_moves_happy_leaves,
    random_placement,
    random_tree,
    replay,
)


def report(num, desc, failures):
    status = "FAIL" if failures else "PASS"
    print(f"\n[ACCEPTANCE {num:02d}] {status}: {desc}")
    assert not failures, f"criterion {num} ({desc}): {failures[:5]}"


def star(n):
    return Tree(n, [(i, n - 1) for i in range(n - 1)])


def path(n):
    return Tree(n, [(i, i + 1) for i in range(n - 1)])


def broom(n, k):
    return Tree(n, [(i, k) for i in range(k)] + [(j, j + 1) for j in range(k, n - 1)])


def random_star_colouring(rng, n, ncol):
    vc = [rng.randrange(ncol) for _ in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    tc = [vc[perm[v]] for v in range(n)]
    return Colouring(vc, tc)


def test_criterion_01_happy_leaf_refutation():
    failures = []
    inst, companion = con.gen_happy_leaf_counterexample()
    res = apply_sequence(inst, companion)
    if not (is_identity(res.placement) and res.length == 34):
        failures.append(f"companion length {res.length}")
    unrestricted = oracle.optimal(inst).cost
    restricted = oracle.optimal(inst, forbidden_vertices=[9]).cost
    if not (unrestricted <= 34 and unrestricted < 36):
        failures.append(f"unrestricted optimum {unrestricted}")
    if restricted != 36:
        failures.append(f"restricted optimum {restricted}")
    report(1, "happy-leaf refutation (34 vs 36)", failures)


def test_criterion_02_star_exactness():
    failures = []
    for n in range(3, 8):
        t = star(n)
        table = oracle.all_distances(t)
        for perm in itertools.permutations(range(n)):
            inst = Instance(t, perm)
            length = len(ex.solve_star(inst))
            dec = cycle_decomposition(inst)
            expected = dec.n_unhappy + dec.l
            if not (length == expected == table.lookup(perm)):
                failures.append((n, perm, length, expected, table.lookup(perm)))
    report(2, "solve_star = n_U + l = oracle on all stars n in 3..7", failures)


def test_criterion_03_weighted_star():
    failures = []
    rng = random.Random(103)
    for n in (4, 5, 6):
        t = star(n)
        for _ in range(500):
            perm = random_placement(rng, n)
            ws = [rng.randint(1, 10) for _ in range(n)]
            inst = weighted_instance(t, perm, ws)
            seq, summary = ex.solve_weighted_star(inst)
            cost = apply_sequence(inst, seq).cost
            if cost != summary.formula_cost() or cost != oracle.optimal(inst).cost:
                failures.append((n, perm, ws, cost))
    report(3, "weighted star = closed-form cost = uniform-cost oracle", failures)


def test_criterion_04_coloured_star():
    failures = []
    rng = random.Random(104)
    for n in (4, 5, 6):
        t = star(n)
        for _ in range(500):
            col = random_star_colouring(rng, n, rng.randint(2, 4))
            inst = Instance(t, tuple(range(n)), col)
            _, seq, graph = ex.solve_coloured_star(inst)
            expected = (n - 1 - graph.leaf_loops) + graph.kappa
            goal = inst.is_goal(apply_sequence(inst, seq).placement)
            if not goal or len(seq) != expected or len(seq) != oracle.optimal(inst).cost:
                failures.append((n, col.vertex_colour, col.token_colour))
    report(4, "coloured star = (n-1-lambda)+kappa = coloured oracle", failures)


def test_criterion_05_weighted_coloured_star():
    failures = []
    rng = random.Random(105)
    for n in (4, 5, 6):
        t = star(n)
        for _ in range(500):
            ncol = rng.randint(2, 4)
            col = random_star_colouring(rng, n, ncol)
            w = WeightTable({c: rng.randint(1, 5) for c in range(ncol)})
            inst = Instance(t, tuple(range(n)), col, w)
            seq = ex.solve_weighted_coloured_star(inst)
            res = apply_sequence(inst, seq)
            if not inst.is_goal(res.placement) or res.cost != oracle.optimal(inst).cost:
                failures.append((n, col.vertex_colour, col.token_colour))
    report(5, "weighted coloured star = weighted coloured oracle", failures)


def test_criterion_06_broom_exactness():
    failures = []
    for n in range(3, 9):
        for k in range(2, n):
            t = broom(n, k)
            table = oracle.all_distances(t)
            for perm in itertools.permutations(range(n)):
                inst = Instance(t, perm)
                seq, trace = ex.solve_broom(inst)
                ok = (
                    len(seq) == table.lookup(perm)
                    and ex.broom_count_formula(trace, inst) == len(seq)
                )
                if not ok:
                    failures.append((n, k, perm, len(seq), table.lookup(perm)))
                    if len(failures) > 3:
                        report(6, "broom exactness", failures)
    report(6, "solve_broom = oracle and count formula on all brooms n <= 8", failures)


def test_criterion_07_paths():
    failures = []
    for n in range(2, 9):
        t = path(n)
        table = oracle.all_distances(t)
        for perm in itertools.permutations(range(n)):
            inst = Instance(t, perm)
            length = len(ex.solve_path(inst))
            if not (length == ex.inversion_count(inst) == table.lookup(perm)):
                failures.append((n, perm))
    rng = random.Random(107)
    for _ in range(500):
        n = rng.randint(2, 7)
        t = path(n)
        ncol = rng.randint(1, 3)
        vc = [rng.randrange(ncol) for _ in range(n)]
        perm = random_placement(rng, n)
        tc = [vc[perm[v]] for v in range(n)]
        w = WeightTable({c: rng.randint(1, 5) for c in range(ncol)})
        inst = Instance(t, tuple(range(n)), Colouring(vc, tc), w)
        seq = ex.solve_weighted_coloured_path(inst)
        res = apply_sequence(inst, seq)
        if not inst.is_goal(res.placement) or res.cost != oracle.optimal(inst).cost:
            failures.append(("wcp", n, vc, tc))
    report(7, "paths: inversion sort = oracle; weighted coloured = oracle", failures)


def _criterion_08_instances():
    rng = random.Random(108)
    for _ in range(1000):
        n = rng.randint(2, 9)
        tree = random_tree(rng, n)
        yield Instance(tree, random_placement(rng, n))


def test_criterion_08_approximation_envelope():
    failures = []
    for inst in _criterion_08_instances():
        opt = oracle.optimal(inst).cost
        rep = approx.akers_bound(inst)
        hs = approx.happy_swap_algorithm(inst)
        cy = approx.cycle_algorithm(inst)
        va = approx.vaughan_algorithm(inst)
        for name, seq in (("happy", hs), ("cycle", cy), ("vaughan", va)):
            if not is_identity(replay(inst, seq)):
                failures.append((name, "does not sort", inst.start))
            if not never_moves_happy_leaves(inst, seq):
                failures.append((name, "moved a happy leaf", inst.start))
        if len(hs) > rep.m or (opt > 0 and len(hs) > 2 * opt):
            failures.append(("happy", "bound", inst.start, len(hs), rep.m, opt))
        if opt > 0 and len(cy) > 2 * opt:
            failures.append(("cycle", "bound", inst.start, len(cy), opt))
        if not ((rep.d + 1) // 2 <= len(va) <= rep.d or rep.d == 0):
            failures.append(("vaughan", "envelope", inst.start, len(va), rep.d))
        if len(failures) > 5:
            break
    report(
        8,
        "1000 random trees n <= 9: valid sequences, happy <= M and <= 2 opt, "
        "cycle <= 2 opt, vaughan in [D/2, D], happy leaves fixed",
        failures,
    )


def test_criterion_08_happy_swap_equals_akers_bound():
    # This check demands happy-swap length == M on every instance.
    # A happy swap between tokens of two different permutation cycles merges
    # them (M drops by 3, not 1), so runs can finish below M; see
    # test_approx.py::TestHappySwap::test_merging_happy_swap_beats_akers_bound
    # for a four-vertex witness.  Expected to fail; kept faithful and red.
    failures = []
    for inst in _criterion_08_instances():
        rep = approx.akers_bound(inst)
        hs = approx.happy_swap_algorithm(inst)
        if len(hs) != rep.m:
            failures.append((inst.tree.edges, inst.start, len(hs), rep.m))
            if len(failures) >= 3:
                break
    report(8, "happy-swap length equals M on every instance", failures)


def test_criterion_09_tightness_reproduction():
    failures = []
    for k, b in ((2, 3), (3, 5), (5, 5)):
        out = con.gen_Tkb(k, b)
        cy = approx.cycle_algorithm(out.instance)
        if len(cy) != b * k * k + k:
            failures.append((k, b, len(cy)))
    out = con.gen_Tkb(50, 50, fix_even=True)
    cy = approx.cycle_algorithm(out.instance)
    hs = approx.happy_swap_algorithm(out.instance)
    if len(cy) / len(out.companion) < 1.75:
        failures.append(("cycle ratio", len(cy), len(out.companion)))
    if len(hs) < 50 * 50 * 50:
        failures.append(("happy-swap", len(hs)))
    tk = con.gen_Tk(1000)
    if tk.reversal_cost / len(tk.companion) < 1.3:
        failures.append(("tk ratio", tk.reversal_cost, len(tk.companion)))
    report(9, "cycle = bk^2+k; ratios at k=b=50 and k=1000", failures)


TRIANGLE = con.VertexCoverInput(3, [(0, 1), (0, 2), (1, 2)], 2)


def test_criterion_10_reduction_certification():
    failures = []
    red = con.build_vc_reduction(TRIANGLE)
    if red.beta != 4_793_904:
        failures.append(("beta", red.beta))
    if red.beta_prime != 12:
        failures.append(("beta_prime", red.beta_prime))
    if red.budget != 4_794_904:
        failures.append(("budget", red.budget))
    seq = con.vc_to_sequence(red, [0, 1])
    res = apply_sequence(red.instance, seq)
    if not red.instance.is_goal(res.placement):
        failures.append("schedule does not reach the goal")
    if res.cost > red.budget:
        failures.append(("cost above budget", res.cost))
    if con.sequence_to_cover(red, seq) != (0, 1):
        failures.append("round trip lost the cover")
    report(
        10,
        "triangle reduction: parameters, valid schedule within budget, round trip",
        failures,
    )


def test_criterion_10_cost_equals_budget_exactly():
    # This check demands that the schedule's weighted cost equal the
    # closed-form budget.  The beta' term does not price any actual schedule:
    # for a single-edge graph beta' = 0 yet the pulled token still needs
    # swaps, and for the triangle the canonical schedule pays 15 where the
    # formula allots 2 * beta' = 24.  Expected to fail; kept faithful.
    red = con.build_vc_reduction(TRIANGLE)
    seq = con.vc_to_sequence(red, [0, 1])
    cost = apply_sequence(red.instance, seq).cost
    failures = [] if cost == red.budget else [("cost", cost, "budget", red.budget)]
    report(10, "schedule cost equals the closed-form budget exactly", failures)


def test_criterion_11_conjecture_search():
    failures = []
    rep = exp.happy_leaf_search(max_n=8)
    if rep["trees_checked"] != 47 or rep["counterexample_count"] != 0:
        failures.append(("max-n 8", rep["counterexample_count"]))
    rep10 = exp.happy_leaf_search(trees=[exp.happy_leaf_tree()])
    known = [8, 7, 6, 5, 4, 3, 2, 1, 0, 9]
    hits = [ce for ce in rep10["counterexamples"] if ce["placement"] == known]
    if rep10["counterexample_count"] < 1 or not hits:
        failures.append(("n=10 tree", rep10["counterexample_count"]))
    elif not (hits[0]["unrestricted"] < hits[0]["restricted"]):
        failures.append(("n=10 distances", hits[0]))
    report(
        11,
        "no counterexamples up to n=8; the 10-vertex tree yields one",
        failures,
    )


@pytest.mark.skipif(
    not os.environ.get("TREESWAP_SLOW"),
    reason="slow opt-in: set TREESWAP_SLOW=1 (tens of minutes)",
)
def test_criterion_11_conjecture_search_n9():
    rep = exp.happy_leaf_search(max_n=9)
    failures = [] if rep["counterexample_count"] == 0 else [rep["counterexample_count"]]
    report(11, "no counterexamples at n = 9 (slow opt-in)", failures)


def test_criterion_12_bounds():
    failures = []
    for n in range(2, 8):
        for tree in exp.enumerate_free_trees(n):
            table = oracle.all_distances(tree)
            if table.max_distance() > approx.chitturi_bound(tree):
                failures.append(("gamma", tree.edges))
            for perm in itertools.permutations(range(n)):
                rep = approx.akers_bound(Instance(tree, perm))
                if not (table.lookup(perm) <= rep.m <= rep.d):
                    failures.append(("akers", tree.edges, perm))
    report(12, "diameter <= chitturi gamma; oracle <= M <= D on all trees n <= 7", failures)
