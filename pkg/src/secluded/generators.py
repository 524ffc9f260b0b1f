"""Instance families: the set-cover co-reduction, OR-composition, random and planted."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import InstanceError
from .graph import SecludedInstance, Solution, VertexWeightedGraph
from .io import write_instance
from .steiner import dreyfus_wagner


def gen_from_set_cover(n: int, sets, k: int):
    """Graph for a set-cover instance over universe {0..n-1}.

    Vertices: x_1..x_m are 0..m-1, u_1..u_n are m..m+n-1, the apex y is m+n.
    Terminals are y and every u_j, and r = m - k - 1. The set cover has a
    cover of size <= k exactly when the secluded instance at budget ell + r
    has no solution. Returns (instance at that budget, metadata).
    """
    sets = [frozenset(s) for s in sets]
    m = len(sets)
    if n < 1:
        raise InstanceError("universe must be nonempty")
    if m < k + 2:
        raise InstanceError(f"need m >= k + 2 (got m={m}, k={k})")
    for s in sets:
        if any(not 0 <= u < n for u in s):
            raise InstanceError("set element outside the universe")
    covered = frozenset().union(*sets)
    if len(covered) != n:
        raise InstanceError(f"elements {sorted(set(range(n)) - covered)} lie in no set")
    y = m + n
    edges = [(i, m + u) for i, s in enumerate(sets) for u in sorted(s)]
    edges += [(i, y) for i in range(m)]
    g = VertexWeightedGraph.from_edges(m + n + 1, edges)
    terminals = (y,) + tuple(range(m, m + n))
    ell = dreyfus_wagner(g, terminals).ell
    r = m - k - 1
    inst = SecludedInstance(g, tuple(sorted(terminals)), ell + r)
    meta = {"family": "set-cover", "universe": n, "sets": [sorted(s) for s in sets],
            "cover_k": k, "ell": ell, "r": r, "budget": ell + r}
    return inst, meta


def composition_height(count: int) -> int:
    """Smallest q >= 1 with 2^q >= count."""
    if count < 1:
        raise InstanceError("need at least one instance")
    return max(1, (count - 1).bit_length())


def gen_or_composition(instances) -> SecludedInstance:
    """Glue path instances under two binary trees whose leaves are the terminals.

    All inputs need the same n >= 3 and the same k. Missing leaves are
    filled with copies of the first instance. The budget becomes k + 4q.
    """
    instances = list(instances)
    if not instances:
        raise InstanceError("empty instance list")
    n = instances[0].graph.n
    k = instances[0].exposure_budget
    for inst in instances:
        if inst.p != 2:
            raise InstanceError("composition takes 2-terminal instances")
        if inst.graph.n != n or inst.exposure_budget != k:
            raise InstanceError("composed instances need equal n and k")
    if n < 3 or k is None:
        raise InstanceError("composition needs n >= 3 and a budget k")
    q = composition_height(len(instances))
    t = 2 ** q
    instances = instances + [instances[0]] * (t - len(instances))

    edges, omega = [], []
    for i, inst in enumerate(instances):
        base = i * n
        edges += [(base + u, base + v) for u, v in inst.graph.edges()]
        omega += list(inst.graph.omega)
    inner = t - 1  # internal nodes per tree, heap order, root first
    trees = []
    for side in (0, 1):
        start = len(omega)
        omega += [1] * inner

        def node(j, start=start, side=side):
            if j < inner:
                return start + j
            leaf = j - inner
            return leaf * n + instances[leaf].terminals[side]

        for j in range(inner):
            edges += [(node(j), node(2 * j + 1)), (node(j), node(2 * j + 2))]
        trees.append(start)
    g = VertexWeightedGraph.from_edges(len(omega), edges, omega)
    return SecludedInstance(g, tuple(sorted(trees)), k + 4 * q)


def gen_random(n: int, edge_prob: float, p: int, seed: int = 0, max_weight: int = 1,
               connected: bool = False) -> SecludedInstance:
    """G(n, edge_prob) with p random terminals and weights in 1..max_weight.

    With ``connected`` a random spanning tree is added first.
    """
    if n < 1 or not 1 <= p <= n or not 0.0 <= edge_prob <= 1.0 or max_weight < 0:
        raise InstanceError("bad generator parameters")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < edge_prob
    edges = set(zip(iu[keep].tolist(), ju[keep].tolist()))
    if connected:
        order = rng.permutation(n).tolist()
        for idx in range(1, n):
            u, v = order[idx], order[int(rng.integers(0, idx))]
            edges.add((min(u, v), max(u, v)))
    if max_weight <= 1:
        omega = [max_weight] * n
    else:
        omega = rng.integers(1, max_weight + 1, size=n).tolist()
    g = VertexWeightedGraph.from_edges(n, sorted(edges), omega)
    terms = tuple(sorted(rng.choice(n, size=p, replace=False).tolist()))
    return SecludedInstance(g, terms)


def _random_tree(size, rng):
    if size == 1:
        return []
    if size == 2:
        return [(0, 1)]
    pruefer = rng.integers(0, size, size=size - 2).tolist()
    degree = [1] * size
    for x in pruefer:
        degree[x] += 1
    edges = []
    for x in pruefer:
        leaf = min(v for v in range(size) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [v for v in range(size) if degree[v] == 1]
    edges.append((u, v))
    return edges


def gen_planted(n: int, tree_size: int, r: int, seed: int = 0, max_terminals: int = 4,
                extra_edge_prob: float = 0.3):
    """Hide a tree T with exactly r outside neighbors in an n-vertex graph.

    The terminals are the leaves of T (a random tree with at most
    ``max_terminals`` leaves), so T is a minimal connected S-superset. The
    budget k is set to |N[T]| = tree_size + r. Returns (instance, planted
    solution, metadata).
    """
    if tree_size < 1 or r < 0 or tree_size + r > n:
        raise InstanceError("need 1 <= tree_size and tree_size + r <= n")
    if r == 0 and n > tree_size:
        raise InstanceError("r = 0 leaves the rest of the graph unreachable")
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        tedges = _random_tree(tree_size, rng)
        deg = [0] * tree_size
        for u, v in tedges:
            deg[u] += 1
            deg[v] += 1
        leaves = [v for v in range(tree_size) if deg[v] <= 1]
        if len(leaves) <= max_terminals:
            break
    else:
        raise InstanceError("could not draw a tree with few enough leaves")
    T = list(range(tree_size))
    Y = list(range(tree_size, tree_size + r))
    R = list(range(tree_size + r, n))
    edges = set((min(u, v), max(u, v)) for u, v in tedges)
    for y in Y:
        edges.add((int(rng.integers(0, tree_size)), y))
        for t in T:
            if rng.random() < extra_edge_prob / 2:
                edges.add((t, y))
    for idx, x in enumerate(R):
        # each remaining vertex hangs off Y or an earlier remaining vertex
        pool = Y + R[:idx]
        edges.add(tuple(sorted((pool[int(rng.integers(0, len(pool)))], x))))
    for a in Y + R:
        for b in Y + R:
            if a < b and rng.random() < extra_edge_prob:
                edges.add((a, b))
    perm = rng.permutation(n).tolist()
    edges = sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges)
    g = VertexWeightedGraph.from_edges(n, edges)
    terms = tuple(sorted(perm[v] for v in leaves))
    planted = Solution.from_vertices(g, [perm[v] for v in T], engine="planted")
    inst = SecludedInstance(g, terms, planted.exposure)
    ell = dreyfus_wagner(g, terms).ell
    meta = {"family": "planted", "n": n, "tree_size": tree_size, "boundary": r,
            "ell": ell, "r": planted.exposure - ell, "seed": seed}
    return inst, planted, meta


def write_with_sidecar(inst: SecludedInstance, path, meta: Optional[dict] = None) -> None:
    """Write ``path`` in the instance format and ``path`` + ``.json`` with metadata."""
    path = Path(path)
    path.write_text(write_instance(inst))
    meta = dict(meta or {})
    if "ell" not in meta:
        st = dreyfus_wagner(inst.graph, inst.terminals)
        meta["ell"] = None if st is None else st.ell
    if "r" not in meta and meta["ell"] is not None and inst.exposure_budget is not None:
        meta["r"] = inst.exposure_budget - meta["ell"]
    Path(str(path) + ".json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
