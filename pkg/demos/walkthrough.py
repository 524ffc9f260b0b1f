"""A tour of the engines on small instances.

Run with ``python3 demos/walkthrough.py``. Every engine is checked against
the exhaustive oracle on the same instance.
"""

from secluded import SecludedInstance, VertexWeightedGraph
from secluded.connected_sets import solve_secluded_steiner
from secluded.exact import solve_exact
from secluded.generators import gen_from_set_cover, gen_planted
from secluded.kernel import kernelize
from secluded.oracle import brute_force_solve
from secluded.paths import solve_path_above_guarantee, solve_secluded_path
from secluded.separation import SeparationConfig, separation_budget, solve_above_guarantee
from secluded.treewidth import solve_treewidth


def show(label, sol):
    if sol is None:
        print(f"  {label:<10} no solution")
    else:
        print(f"  {label:<10} exposure {sol.exposure} cost {sol.cost} tree {sorted(sol.tree_vertices)}")


def detour():
    # the two-hop route 0-2-1 passes a hub with five pendants; the long way round is quieter
    edges = [(0, 2), (2, 1), (0, 3), (3, 4), (4, 5), (5, 1)] + [(2, v) for v in range(6, 11)]
    g = VertexWeightedGraph.from_edges(11, edges)
    inst = SecludedInstance(g, (0, 1))
    print("detour graph, terminals 0 and 1")
    show("oracle", brute_force_solve(inst))
    show("branch", solve_secluded_path(inst))
    show("exact", solve_exact(inst))
    show("above", solve_path_above_guarantee(inst, 3))
    print(f"  twdp       exposure {solve_treewidth(inst, repeats=10).exposure}")


def planted():
    inst, hidden, meta = gen_planted(14, 6, 3, seed=11)
    r = meta["r"]
    print(f"planted tree on 14 vertices: ell {meta['ell']}, r {r}, "
          f"separation budget N = {separation_budget(inst.p, max(r, 1))}")
    show("hidden", hidden)
    show("enum", solve_secluded_steiner(inst))
    res = solve_above_guarantee(inst, r, SeparationConfig(trials=4096, rng_seed=1))
    print(f"  rs         found={res.feasible} after {res.trials_run} colorings")


def set_cover():
    # {1,2}, {2,3}, {3}, {1} over {1,2,3}: two sets cover, so k = 2 gives a secluded NO
    sets = [{0, 1}, {1, 2}, {2}, {0}]
    for k in (1, 2):
        inst, meta = gen_from_set_cover(3, sets, k)
        verdict = "yes" if brute_force_solve(inst) is not None else "no"
        print(f"set cover with k={k}: secluded instance at budget {meta['budget']} says {verdict}")


def kernel():
    g = VertexWeightedGraph.from_edges(8, [(0, i) for i in range(1, 6)] + [(5, 6), (6, 7)])
    out = kernelize(SecludedInstance(g, (1, 7), 6), 2)
    n_out = None if out.instance is None else out.instance.graph.n
    print(f"kernel of a broom: verdict {out.verdict}, {g.n} -> {n_out} vertices ({out.reason or 'ok'})")


if __name__ == "__main__":
    detour()
    planted()
    set_cover()
    kernel()
