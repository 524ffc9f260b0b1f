import pytest

from secluded.errors import InstanceError
from secluded.generators import gen_planted
from secluded.graph import SecludedInstance, VertexWeightedGraph, mask_of, verify
from secluded.oracle import brute_force_solve
from secluded.separation import (RedBlueColoring, SeparationConfig, boundary_contacts,
                                 coloring_masks, correct_coloring, greedy_minimize,
                                 high_degree_core, run_trial, separation_budget,
                                 solve_above_guarantee, trial_coloring, witness_set)
from secluded.steiner import dreyfus_wagner

from support import atlas_graphs, random_instance, rng

P5 = VertexWeightedGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])


@pytest.mark.parametrize("p, r, N", [(2, 1, 20), (3, 2, 47), (2, 10, 83)])
def test_budget_formula(p, r, N):
    assert separation_budget(p, r) == N


def test_budget_rejects_trivial_range():
    with pytest.raises(ValueError):
        separation_budget(1, 3)
    with pytest.raises(ValueError):
        separation_budget(2, 0)
    with pytest.raises(InstanceError):
        SeparationConfig(trials=0)


def test_coloring_type():
    c = RedBlueColoring.from_red(P5, {0, 1})
    assert c.blue == {2, 3, 4}
    with pytest.raises(InstanceError):
        RedBlueColoring(frozenset({1}), frozenset({1, 2}))


def test_all_red_accepts_and_blue_terminal_fails():
    inst = SecludedInstance(P5, (0, 4), 5)
    out = run_trial(inst, RedBlueColoring.from_red(P5, range(5)))
    assert out.accepted and out.step == "accept" and out.solution.tree_vertices == set(range(5))
    out = run_trial(inst, RedBlueColoring.from_red(P5, {0, 1, 2, 3}))
    assert not out.accepted and out.step == "step2"


def test_recoloring_grows_red_strictly():
    inst = SecludedInstance(P5, (0, 4), 5)
    out = run_trial(inst, RedBlueColoring.from_red(P5, {0, 1, 3, 4}))
    assert out.accepted and out.recolorings == 1
    r = rng(40)
    for _ in range(300):
        inst = random_instance(r, 4, 12, p_max=4, w_max=1, budgets=False)
        if inst.p < 2:
            continue
        out = run_trial(inst, RedBlueColoring.from_mask(inst.graph, int(r.integers(0, 1 << inst.graph.n))))
        assert all(a < b for a, b in zip(out.red_sizes, out.red_sizes[1:]))
        assert out.recolorings <= inst.graph.n


def test_coloring_streams_are_replayable():
    a = coloring_masks(30, 7, 3)
    assert a == coloring_masks(30, 7, 3)
    assert a != coloring_masks(30, 8, 3)
    assert trial_coloring(P5, 7, 3 * 256 + 5).red == set(i for i in range(5) if (coloring_masks(5, 7, 3)[5] >> i) & 1)


def test_trivial_cases():
    star = VertexWeightedGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert solve_above_guarantee(SecludedInstance(star, (1,)), 1).solution.tree_vertices == {1}
    assert not solve_above_guarantee(SecludedInstance(star, (0,)), 0).feasible
    assert solve_above_guarantee(SecludedInstance(star, (1, 2, 3)), 0).solution.exposure == 4
    assert not solve_above_guarantee(SecludedInstance(star, (1, 2)), 0).feasible


def test_r_zero_matches_oracle_on_small_graphs():
    r = rng(41)
    for g in atlas_graphs(7):
        p = int(r.integers(1, min(4, g.n) + 1))
        S = tuple(sorted(r.choice(g.n, size=p, replace=False).tolist()))
        res = solve_above_guarantee(SecludedInstance(g, S), 0)
        oracle = brute_force_solve(SecludedInstance(g, S, res.ell))
        assert res.feasible == (oracle is not None)
        if res.feasible:
            assert verify(res.solution, SecludedInstance(g, S, res.ell)) == []


def test_never_a_false_yes():
    r = rng(42)
    for _ in range(200):
        inst = random_instance(r, 3, 12, p_max=4, budgets=False)
        st = dreyfus_wagner(inst.graph, inst.terminals)
        rr = int(r.integers(0, 4))
        res = solve_above_guarantee(inst, rr, SeparationConfig(trials=64, rng_seed=1))
        truth = brute_force_solve(inst.with_budget(st.ell + rr))
        if res.feasible:
            assert truth is not None
            assert verify(res.solution, inst.with_budget(st.ell + rr)) == []
        elif res.certain:
            assert truth is None


def test_diagnostic_examples():
    X = high_degree_core(P5, range(5), [0, 4])
    assert X == {0, 4} and len(X) <= 4 * 2 - 6
    assert boundary_contacts(P5, range(5)) == frozenset()
    w = witness_set(P5, range(5), [0, 4])
    assert w["Y"] == frozenset() and w["Y'"] == frozenset()


def test_greedy_minimize_gives_inclusion_minimal_set():
    r = rng(43)
    for _ in range(100):
        inst = random_instance(r, 3, 10, budgets=False)
        T = greedy_minimize(inst.graph, range(inst.graph.n), inst.terminals)
        m = mask_of(T)
        assert inst.graph.mask_connected(m) and set(inst.terminals) <= T
        for v in T - set(inst.terminals):
            assert not inst.graph.mask_connected(m & ~(1 << v))


def test_correct_coloring_always_accepts_planted():
    r = rng(44)
    for seed in range(120):
        n = int(r.integers(6, 15))
        ts = int(r.integers(2, min(7, n - 1) + 1))
        inst, planted, meta = gen_planted(n, ts, int(r.integers(1, min(4, n - ts) + 1)), seed=seed)
        assert verify(planted, inst) == []
        for _ in range(5):
            fill = int(r.integers(0, 1 << n))
            out = run_trial(inst, correct_coloring(inst.graph, planted.tree_vertices, inst.terminals, fill))
            assert out.accepted, (seed, out.step)
            assert out.solution.tree_vertices <= planted.tree_vertices


def test_correct_coloring_accepts_minimized_oracle_trees():
    r = rng(45)
    done = 0
    while done < 150:
        inst = random_instance(r, 4, 12, p_max=4, budgets=False)
        if inst.p < 2:
            continue
        sol = brute_force_solve(inst)
        T = greedy_minimize(inst.graph, sol.tree_vertices, inst.terminals)
        g = inst.graph
        budgeted = inst.with_budget(g.mask_closed(mask_of(T)).bit_count())
        out = run_trial(budgeted, correct_coloring(g, T, inst.terminals, int(r.integers(0, 1 << g.n))))
        assert out.accepted
        done += 1
