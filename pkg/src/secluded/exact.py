"""Exact exponential solvers that split the exposure range between two methods.

For a budget i the solution either comes from the parameterized engine
(cheap when i is small) or from enumerating the n - i vertices that must
stay outside N[T] (cheap when i is close to n). Budgets are tried in
increasing order and the first feasible one is optimal.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional

from .connected_sets import _best_within
from .errors import EngineMismatch
from .graph import SecludedInstance, Solution, VertexWeightedGraph, best, mask_of
from .paths import enumerate_secluded_paths
from .steiner import dreyfus_wagner, shortest_path_vertices

# thresholds as exact rationals: 0.8983 and 0.77923
PATH_NUM, PATH_DEN = 8983, 10000
STEINER_NUM, STEINER_DEN = 77923, 100000


def route_path(i: int, n: int) -> str:
    return "complement" if i * PATH_DEN >= PATH_NUM * n else "branch"


def route_steiner(i: int, n: int) -> str:
    return "complement" if i * STEINER_DEN >= STEINER_NUM * n else "enum"


def _ok(inst, closed):
    C = inst.cost_budget
    return C is None or inst.graph.mask_cost(closed) <= C


def path_branch_at(inst: SecludedInstance, i: int) -> Optional[Solution]:
    """Best induced path with exposure <= i (and cost <= C) by branching."""
    g = inst.graph
    s, t = inst.terminals
    paths, _ = enumerate_secluded_paths(g, s, t, i)
    cands = []
    for p in paths:
        m = mask_of(p)
        if _ok(inst, g.mask_closed(m)):
            cands.append(Solution.from_mask(g, m))
    return best(cands)


def _regions(inst: SecludedInstance, i: int):
    """Component of G - N[X] holding the first terminal, over all X of size n - i
    avoiding the terminals, when it holds every terminal."""
    g = inst.graph
    smask = inst.terminal_mask
    free = [v for v in range(g.n) if not (smask >> v) & 1]
    size = g.n - i
    if size < 0 or size > len(free):
        return
    cm = g.closed_mask
    full = g.full_mask
    for X in combinations(free, size):
        blocked = 0
        for x in X:
            blocked |= cm[x]
        if blocked & smask:
            continue
        K = g.mask_component(full & ~blocked, inst.terminals[0])
        if K & smask == smask:
            yield K


def path_complement_at(inst: SecludedInstance, i: int) -> Optional[Solution]:
    """Best path found inside G - N[X] over all |X| = n - i."""
    g = inst.graph
    s, t = inst.terminals
    cands = {}
    for K in _regions(inst, i):
        if K in cands:
            continue
        # a shortest path inside K is induced
        sub = _restrict(g, K)
        sp = shortest_path_vertices(sub, s, t)
        m = mask_of(sp)
        closed = g.mask_closed(m)
        if closed.bit_count() <= i and _ok(inst, closed):
            cands[K] = Solution.from_mask(g, m)
        else:
            cands[K] = None
    return best(c for c in cands.values() if c is not None)


def steiner_enum_at(inst: SecludedInstance, i: int) -> Optional[Solution]:
    mask, _ = _best_within(inst, i)
    return None if mask is None else Solution.from_mask(inst.graph, mask)


def steiner_complement_at(inst: SecludedInstance, i: int) -> Optional[Solution]:
    g = inst.graph
    cands = []
    seen = set()
    for K in _regions(inst, i):
        if K in seen:
            continue
        seen.add(K)
        closed = g.mask_closed(K)
        if closed.bit_count() <= i and _ok(inst, closed):
            cands.append(Solution.from_mask(g, K))
    return best(cands)


def _restrict(g, mask):
    """Copy of g with every edge leaving ``mask`` removed (vertex ids kept)."""
    edges = [(u, v) for u, v in g.edges() if (mask >> u) & 1 and (mask >> v) & 1]
    return VertexWeightedGraph.from_edges(g.n, edges, g.omega)


def _scan(inst, start, at_small, at_large, route, engine):
    g = inst.graph
    k = inst.exposure_budget
    top = g.n if k is None else min(k, g.n)
    routes = {}
    for i in range(max(start, 1), top + 1):
        side = route(i, g.n)
        routes[i] = side
        sol = at_large(inst, i) if side == "complement" else at_small(inst, i)
        if sol is not None:
            return Solution.from_mask(g, mask_of(sol.tree_vertices), engine=engine,
                                      budget=i, route=side, routes_tried=len(routes))
    return None


def solve_exact_path(inst: SecludedInstance) -> Optional[Solution]:
    if inst.p != 2:
        raise EngineMismatch(f"path solving needs exactly 2 terminals, got {inst.p}")
    sp = shortest_path_vertices(inst.graph, *inst.terminals)
    if sp is None:
        return None
    return _scan(inst, len(sp), path_branch_at, path_complement_at, route_path, "exact")


def solve_exact_steiner(inst: SecludedInstance) -> Optional[Solution]:
    st = dreyfus_wagner(inst.graph, inst.terminals)
    if st is None:
        return None
    return _scan(inst, st.ell, steiner_enum_at, steiner_complement_at, route_steiner, "exact")


def solve_exact(inst: SecludedInstance) -> Optional[Solution]:
    return solve_exact_path(inst) if inst.p == 2 else solve_exact_steiner(inst)
