"""Steiner tree size (the guarantee ``ell``) and shortest paths.

Sizes count vertices: a tree with ``e`` edges has ``e + 1`` vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import VertexWeightedGraph

_INF = np.iinfo(np.int64).max // 4


@dataclass(frozen=True)
class SteinerResult:
    ell: int
    witness_tree: frozenset


def _bfs(g: VertexWeightedGraph, s: int):
    dist = [-1] * g.n
    parent = [-1] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    return dist, parent


def shortest_path_vertices(g: VertexWeightedGraph, s: int, t: int) -> Optional[list]:
    """A minimum-vertex s-t path as a vertex list, or None when disconnected."""
    g.check_vertex(s)
    g.check_vertex(t)
    dist, parent = _bfs(g, s)
    if dist[t] < 0:
        return None
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    return path[::-1]


def distance_matrix(g: VertexWeightedGraph):
    """All-pairs hop distances (``_INF`` when unreachable) plus BFS parent rows."""
    dist = np.full((g.n, g.n), _INF, dtype=np.int64)
    parents = []
    for s in range(g.n):
        d, par = _bfs(g, s)
        row = np.asarray(d, dtype=np.int64)
        row[row < 0] = _INF
        dist[s] = row
        parents.append(par)
    return dist, parents


def dreyfus_wagner(g: VertexWeightedGraph, terminals) -> Optional[SteinerResult]:
    """Exact minimum Steiner tree (vertex count) in O*(3^p); None if S is split."""
    terms = list(dict.fromkeys(terminals))
    if not terms:
        raise ValueError("need at least one terminal")
    for t in terms:
        g.check_vertex(t)
    if len(terms) == 1:
        return SteinerResult(1, frozenset(terms))

    dist, parents = distance_matrix(g)
    if any(dist[terms[0], t] >= _INF for t in terms[1:]):
        return None
    if len(terms) == 2:
        path = shortest_path_vertices(g, terms[0], terms[1])
        return SteinerResult(len(path), frozenset(path))

    # dp[mask][v]: fewest edges in a tree spanning terminals(mask) + v.
    # Only masks over terms[1:] are tabulated; terms[0] is the final root.
    rest = terms[1:]
    q = len(rest)
    full = (1 << q) - 1
    dp = np.full((1 << q, g.n), _INF, dtype=np.int64)
    # back pointers: ("path", u) relaxation from u, ("split", sub) merge at v
    how = [[None] * g.n for _ in range(1 << q)]
    for i, t in enumerate(rest):
        dp[1 << i] = dist[t]
        for v in range(g.n):
            how[1 << i][v] = ("leaf", t)

    for mask in range(1, full + 1):
        if mask & (mask - 1) == 0:
            continue
        low = mask & -mask
        merged = np.full(g.n, _INF, dtype=np.int64)
        split = np.zeros(g.n, dtype=np.int64)
        sub = (mask - 1) & mask
        while sub:
            if sub & low:  # each unordered split once
                cand = dp[sub] + dp[mask ^ sub]
                better = cand < merged
                merged[better] = cand[better]
                split[better] = sub
            sub = (sub - 1) & mask
        # relax along shortest paths: dp[mask][v] = min_u merged[u] + dist[u][v]
        total = merged[:, None] + dist
        src = total.argmin(axis=0)
        dp[mask] = total[src, np.arange(g.n)]
        for v in range(g.n):
            u = int(src[v])
            how[mask][v] = ("split", int(split[v])) if u == v else ("path", u, int(split[u]))

    # attach the root terminal terms[0]
    root = terms[0]
    edges = int(dp[full, root])
    witness = set()

    def add_path(a, b):
        par = parents[a]
        x = b
        witness.add(x)
        while x != a:
            x = par[x]
            witness.add(x)

    stack = [(full, root)]
    while stack:
        mask, v = stack.pop()
        entry = how[mask][v]
        if entry[0] == "leaf":
            add_path(entry[1], v)
            continue
        if entry[0] == "path":
            _, u, sub = entry
            add_path(u, v)
            v = u
        else:
            sub = entry[1]
        witness.add(v)
        stack.append((sub, v))
        stack.append((mask ^ sub, v))
    return SteinerResult(edges + 1, frozenset(witness))


def steiner_size(g: VertexWeightedGraph, terminals) -> Optional[int]:
    res = dreyfus_wagner(g, terminals)
    return None if res is None else res.ell
