"""Shared fixtures: graph corpora and independent reference helpers."""

from functools import lru_cache
from itertools import combinations
from pathlib import Path

import networkx as nx
import numpy as np

from secluded.graph import SecludedInstance, VertexWeightedGraph

DATA = Path(__file__).parent / "data"


def to_graph(G, omega=None):
    G = nx.convert_node_labels_to_integers(G, ordering="sorted")
    return VertexWeightedGraph.from_edges(G.number_of_nodes(), sorted(tuple(sorted(e)) for e in G.edges()), omega)


@lru_cache(maxsize=None)
def atlas_graphs(max_n=7, connected=True):
    out = []
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() > max_n:
            continue
        if connected and not nx.is_connected(G):
            continue
        out.append(to_graph(G))
    return tuple(out)


@lru_cache(maxsize=None)
def connected8():
    return tuple(to_graph(G) for G in nx.read_graph6(DATA / "connected8.g6"))


def all_connected_up_to_8():
    return atlas_graphs(7) + connected8()


def random_graph(rng, n, prob, connected=True, w_max=1):
    edges = {(int(u), int(v)) for u, v in combinations(range(n), 2) if rng.random() < prob}
    if connected:
        order = rng.permutation(n).tolist()
        for i in range(1, n):
            u, v = order[i], order[int(rng.integers(0, i))]
            edges.add((min(u, v), max(u, v)))
    omega = [1] * n if w_max <= 1 else rng.integers(1, w_max + 1, size=n).tolist()
    return VertexWeightedGraph.from_edges(n, sorted(edges), omega)


def random_instance(rng, n_lo, n_hi, p_max=4, w_max=5, prob=None, budgets=True):
    n = int(rng.integers(n_lo, n_hi + 1))
    prob = float(rng.uniform(0.15, 0.6)) if prob is None else prob
    g = random_graph(rng, n, prob, w_max=w_max)
    p = int(rng.integers(1, min(p_max, n) + 1))
    S = tuple(sorted(rng.choice(n, size=p, replace=False).tolist()))
    k = C = None
    if budgets and rng.random() < 0.5:
        k = int(rng.integers(p, n + 1))
    if budgets and rng.random() < 0.5:
        C = int(rng.integers(p, 5 * n + 1))
    return SecludedInstance(g, S, k, C)


def naive_closed(g, xs):
    out = set(xs)
    for v in xs:
        for u in range(g.n):
            if g.has_edge(u, v):
                out.add(u)
    return out


def naive_connected(g, xs):
    xs = set(xs)
    if not xs:
        return False
    parent = {v: v for v in xs}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in g.edges():
        if u in xs and v in xs:
            parent[find(u)] = find(v)
    return len({find(v) for v in xs}) == 1


def naive_optimum(inst):
    """(exposure, cost) of the best connected S-superset over all 2^n subsets, no pruning."""
    g = inst.graph
    best = None
    S = set(inst.terminals)
    for mask in range(1, 1 << g.n):
        xs = [v for v in range(g.n) if (mask >> v) & 1]
        if not S <= set(xs) or not naive_connected(g, xs):
            continue
        closed = naive_closed(g, xs)
        e, c = len(closed), sum(g.omega[v] for v in closed)
        if inst.exposure_budget is not None and e > inst.exposure_budget:
            continue
        if inst.cost_budget is not None and c > inst.cost_budget:
            continue
        if best is None or (e, c) < best:
            best = (e, c)
    return best


def answer(sol):
    return (False, None, None) if sol is None else (True, sol.exposure, sol.cost)


def exact_tau(g):
    """Minimum vertex cover size by brute force."""
    edges = list(g.edges())
    for size in range(g.n + 1):
        for cover in combinations(range(g.n), size):
            cs = set(cover)
            if all(u in cs or v in cs for u, v in edges):
                return size
    return g.n


def rng(seed):
    return np.random.default_rng(seed)
