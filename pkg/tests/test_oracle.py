import pytest

from secluded.errors import OracleScaleExceeded
from secluded.graph import SecludedInstance, VertexWeightedGraph, verify
from secluded.oracle import brute_force_enumerate_paths, brute_force_solve

from support import naive_optimum, random_graph, random_instance, rng

C5 = VertexWeightedGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


def test_small_examples():
    k2 = VertexWeightedGraph.from_edges(2, [(0, 1)])
    sol = brute_force_solve(SecludedInstance(k2, (0, 1)))
    assert (sol.exposure, sol.cost) == (2, 2)
    p4 = VertexWeightedGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert brute_force_solve(SecludedInstance(p4, (0, 3))).exposure == 4
    sol = brute_force_solve(SecludedInstance(C5, (0, 1)))
    assert sol.exposure == 4 and sol.tree_vertices == {0, 1}
    assert sol.closed_neighborhood == {4, 0, 1, 2}


def test_cap_refusal():
    g = VertexWeightedGraph.from_edges(23, [(i, i + 1) for i in range(22)])
    with pytest.raises(OracleScaleExceeded, match="oracle scale exceeded"):
        brute_force_solve(SecludedInstance(g, (0, 22)))
    assert brute_force_solve(SecludedInstance(g, (0, 22)), cap=23).exposure == 23


def test_single_vertex_paths():
    assert brute_force_enumerate_paths(C5, 2, 2, 3) == [[2]]
    assert brute_force_enumerate_paths(C5, 2, 2, 2) == []


def test_cycle_paths():
    # adjacent ends: the long arc has a chord, so only the edge is induced
    assert brute_force_enumerate_paths(C5, 0, 1, 5) == [[0, 1]]
    # ends at distance two: both arcs are induced with exposure 5
    assert brute_force_enumerate_paths(C5, 0, 2, 5) == [[0, 1, 2], [0, 4, 3, 2]]
    assert brute_force_enumerate_paths(C5, 0, 2, 4) == []


def test_results_verify_and_match_unpruned_rescan():
    r = rng(9)
    for _ in range(150):
        inst = random_instance(r, 1, 10)
        sol = brute_force_solve(inst)
        best = naive_optimum(inst)
        if sol is None:
            assert best is None
        else:
            assert verify(sol, inst) == []
            assert (sol.exposure, sol.cost) == best


def test_deterministic_certificate():
    r = rng(4)
    for _ in range(30):
        inst = random_instance(r, 4, 12)
        assert brute_force_solve(inst) == brute_force_solve(inst)
