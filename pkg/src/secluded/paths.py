"""Secluded Path by branching over induced paths.

Two enumerators share one recursion shape: the path leaves ``u`` through a
neighbor ``w``, so the rest of the path lives in ``(G - N[u]) + w``. The
first enumerator charges closed neighborhoods against ``k`` (at most
3^(k/3) leaves); the second fixes a vertex allowance ``h`` and charges open
neighborhoods against ``k - h`` (at most 2^(k-h) leaves).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import EngineMismatch, InstanceError
from .graph import SecludedInstance, Solution, VertexWeightedGraph, best, mask_of
from .steiner import shortest_path_vertices


@dataclass
class BranchStats:
    recursion_nodes: int = 0
    recursion_leaves: int = 0
    emitted_paths: int = 0

    def absorb(self, other: "BranchStats") -> None:
        self.recursion_nodes += other.recursion_nodes
        self.recursion_leaves += other.recursion_leaves
        self.emitted_paths += other.emitted_paths

    def as_dict(self) -> dict:
        return {"recursion_nodes": self.recursion_nodes,
                "recursion_leaves": self.recursion_leaves,
                "emitted_paths": self.emitted_paths}


def enumerate_secluded_paths(g: VertexWeightedGraph, s: int, t: int, k: int):
    """All induced s-t paths P with |N[V(P)]| <= k, plus recursion counters.

    Neighbors are tried in ascending id order, so the output order is fixed.
    """
    g.check_vertex(s)
    g.check_vertex(t)
    if k < 0:
        raise InstanceError("k must be nonnegative")
    stats = BranchStats()
    out = []
    nm = g.nbr_mask
    path = []

    def rec(u, allowed, budget):
        stats.recursion_nodes += 1
        nbrs = nm[u] & allowed
        d = nbrs.bit_count()
        if d + 1 > budget:
            stats.recursion_leaves += 1
            return
        path.append(u)
        if u == t:
            out.append(list(path))
            stats.emitted_paths += 1
            stats.recursion_leaves += 1
        elif d == 0:
            stats.recursion_leaves += 1
        else:
            rest = allowed & ~(nbrs | (1 << u))
            m = nbrs
            while m:
                low = m & -m
                m ^= low
                rec(low.bit_length() - 1, rest | low, budget - d)
        path.pop()

    rec(s, g.full_mask, k)
    return out, stats


def enumerate_bounded_paths(g: VertexWeightedGraph, s: int, t: int, max_vertices: int, open_budget: int):
    """Induced s-t paths with at most ``max_vertices`` vertices and |N(V(P))| <= open_budget."""
    g.check_vertex(s)
    g.check_vertex(t)
    stats = BranchStats()
    out = []
    if max_vertices < 1 or open_budget < 0:
        return out, stats
    nm = g.nbr_mask
    path = []

    def rec(u, allowed, budget, room):
        stats.recursion_nodes += 1
        nbrs = nm[u] & allowed
        d = nbrs.bit_count()
        # at t every remaining neighbor joins N(P); elsewhere the next vertex does not
        if d - (u != t) > budget:
            stats.recursion_leaves += 1
            return
        path.append(u)
        if u == t:
            out.append(list(path))
            stats.emitted_paths += 1
            stats.recursion_leaves += 1
        elif d == 0 or room <= 1:
            stats.recursion_leaves += 1
        else:
            # w stays on the path, so only d - 1 vertices join N(P)
            rest = allowed & ~(nbrs | (1 << u))
            m = nbrs
            while m:
                low = m & -m
                m ^= low
                rec(low.bit_length() - 1, rest | low, budget - d + 1, room - 1)
        path.pop()

    rec(s, g.full_mask, open_budget, max_vertices)
    return out, stats


def _path_pair(inst: SecludedInstance):
    if inst.p != 2:
        raise EngineMismatch(f"path engines need exactly 2 terminals, got {inst.p}")
    return inst.terminals


def _best_path(inst, paths, seen=None) -> Optional[Solution]:
    g = inst.graph
    cands = []
    for p in paths:
        mask = mask_of(p)
        if seen is not None:
            if mask in seen:
                continue
            seen.add(mask)
        sol = Solution.from_mask(g, mask)
        if inst.within_budget(sol.exposure, sol.cost):
            cands.append(sol)
    return best(cands)


def solve_secluded_path(inst: SecludedInstance) -> Optional[Solution]:
    """Best induced path under (exposure, cost); iterates k upward when absent."""
    s, t = _path_pair(inst)
    g = inst.graph
    sp = shortest_path_vertices(g, s, t)
    if sp is None:
        return None
    total = BranchStats()
    if inst.exposure_budget is not None:
        budgets = [inst.exposure_budget]
    else:
        budgets = range(len(sp), g.n + 1)
    for k in budgets:
        paths, stats = enumerate_secluded_paths(g, s, t, k)
        total.absorb(stats)
        sol = _best_path(inst, paths)
        if sol is not None:
            return Solution.from_mask(g, mask_of(sol.tree_vertices), engine="branch",
                                      budget=k, **total.as_dict())
    return None


def solve_path_above_guarantee(inst: SecludedInstance, r: Optional[int] = None) -> Optional[Solution]:
    """Exposure budget ell + r where ell is the shortest-path vertex count.

    For every allowance h in [ell, k] the bounded enumerator runs with open
    budget k - h; candidates are deduplicated by vertex set.
    """
    s, t = _path_pair(inst)
    g = inst.graph
    sp = shortest_path_vertices(g, s, t)
    if sp is None:
        return None
    ell = len(sp)
    if r is None:
        if inst.exposure_budget is None:
            raise InstanceError("above-guarantee solving needs r or an exposure budget")
        r = inst.exposure_budget - ell
    if r < 0:
        return None
    k = ell + r
    budgeted = SecludedInstance(g, inst.terminals, k, inst.cost_budget)
    total = BranchStats()
    per_h = {}
    seen = set()
    cands = []
    for h in range(ell, k + 1):
        paths, stats = enumerate_bounded_paths(g, s, t, h, k - h)
        total.absorb(stats)
        per_h[h] = stats.recursion_leaves
        sol = _best_path(budgeted, paths, seen)
        if sol is not None:
            cands.append(sol)
    sol = best(cands)
    if sol is None:
        return None
    return Solution.from_mask(g, mask_of(sol.tree_vertices), engine="branch-above", ell=ell, r=r,
                              leaves_per_h=per_h, **total.as_dict())
