"""Exhaustive reference solvers. Everything else is tested against these."""

from __future__ import annotations

from itertools import combinations
from typing import Optional

from .errors import OracleScaleExceeded
from .graph import SecludedInstance, Solution, VertexWeightedGraph, bits

DEFAULT_CAP = 22


def brute_force_solve(inst: SecludedInstance, cap: int = DEFAULT_CAP) -> Optional[Solution]:
    """Best connected S-superset under (exposure, cost, sorted vertex set).

    Subsets are visited by increasing size; since exposure >= |X| the scan
    stops once |X| exceeds the best exposure found.
    """
    g = inst.graph
    if g.n > cap:
        raise OracleScaleExceeded(g.n, cap)
    smask = inst.terminal_mask
    free = [v for v in range(g.n) if not (smask >> v) & 1]
    k = inst.exposure_budget
    C = inst.cost_budget
    limit = g.n if k is None else min(k, g.n)
    best_key = None
    best_mask = 0
    for extra in range(len(free) + 1):
        size = inst.p + extra
        if size > limit or (best_key is not None and size > best_key[0]):
            break
        for combo in combinations(free, extra):
            x = smask
            for v in combo:
                x |= 1 << v
            closed = g.mask_closed(x)
            exposure = closed.bit_count()
            if exposure > limit or (best_key is not None and exposure > best_key[0]):
                continue
            cost = g.mask_cost(closed)
            if C is not None and cost > C:
                continue
            key = (exposure, cost, tuple(bits(x)))
            if best_key is not None and key >= best_key:
                continue
            if not g.mask_connected(x):
                continue
            best_key, best_mask = key, x
    if best_key is None:
        return None
    return Solution.from_mask(g, best_mask, engine="oracle")


def brute_force_enumerate_paths(g: VertexWeightedGraph, s: int, t: int, k: int,
                                cap: int = DEFAULT_CAP) -> list:
    """All induced s-t paths P with |N[V(P)]| <= k, sorted.

    Plain depth-first search over simple paths; a prefix is abandoned as soon
    as it acquires a chord or its closed neighborhood exceeds k.
    """
    if g.n > cap:
        raise OracleScaleExceeded(g.n, cap)
    g.check_vertex(s)
    g.check_vertex(t)
    out = []
    nm, cm = g.nbr_mask, g.closed_mask

    def dfs(path, pmask, closed):
        u = path[-1]
        if u == t:
            out.append(list(path))
            return
        before = pmask & ~(1 << u)
        for w in g.adjacency[u]:
            if (pmask >> w) & 1 or nm[w] & before:
                continue
            c2 = closed | cm[w]
            if c2.bit_count() > k:
                continue
            path.append(w)
            dfs(path, pmask | (1 << w), c2)
            path.pop()

    if cm[s].bit_count() <= k:
        dfs([s], 1 << s, cm[s])
    return sorted(out)


def brute_force_triple_counts(g: VertexWeightedGraph, S, weights, cap: int = 10) -> dict:
    """{(s, w): count mod 4} over all disjoint triples (X0, X1, Y) with S in X0 u X1,
    no X0-X1 edge, N[X0 u X1] inside X0 u X1 u Y, w = weight(X0 u X1) and
    s = |X0 u X1 u Y|. Zero counts are omitted.

    Walks all 4^n labellings (0 outside, 1 in Y, 2 in X0, 3 in X1) at once.
    """
    import numpy as np

    if g.n > cap:
        raise OracleScaleExceeded(g.n, cap)
    n = g.n
    codes = np.arange(4 ** n, dtype=np.int64)
    lab = np.stack([(codes >> (2 * v)) & 3 for v in range(n)], axis=1) if n else np.zeros((1, 0), np.int64)
    ok = np.ones(lab.shape[0], dtype=bool)
    for v in S:
        ok &= lab[:, v] >= 2
    for u, v in g.edges():
        a, b = lab[:, u], lab[:, v]
        in_a, in_b = a >= 2, b >= 2
        ok &= ~(in_a & in_b & (a != b))  # X0-X1 edge
        ok &= ~(in_a & (b == 0)) & ~(in_b & (a == 0))  # neighbor left outside
    lab = lab[ok]
    w = np.asarray(weights, dtype=np.int64)
    s_val = (lab > 0).sum(axis=1)
    w_val = ((lab >= 2) * w).sum(axis=1) if n else np.zeros(lab.shape[0], np.int64)
    out = {}
    pairs, counts = np.unique(np.stack([s_val, w_val], axis=1), axis=0, return_counts=True)
    for (s, wt), c in zip(pairs, counts):
        if c % 4:
            out[(int(s), int(wt))] = int(c % 4)
    return out
