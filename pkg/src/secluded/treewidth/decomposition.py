"""Tree decompositions, the PACE ``.td`` format, and extended nice decompositions."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_degree

from ..errors import InstanceError, ParseError
from ..graph import VertexWeightedGraph


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple
    tree_edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(self, "tree_edges", tuple((int(a), int(b)) for a, b in self.tree_edges))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def validate_decomposition(g: VertexWeightedGraph, td: TreeDecomposition) -> list:
    """Violations of the three decomposition conditions (empty list when valid)."""
    out = []
    nb = len(td.bags)
    for i, bag in enumerate(td.bags):
        bad = [v for v in bag if not 0 <= v < g.n]
        if bad:
            out.append(f"bag {i} holds out-of-range vertices {sorted(bad)}")
    adj = defaultdict(set)
    for a, b in td.tree_edges:
        if not (0 <= a < nb and 0 <= b < nb) or a == b:
            out.append(f"bad tree edge ({a}, {b})")
            continue
        adj[a].add(b)
        adj[b].add(a)
    if nb == 0:
        if g.n:
            out.append("(i) no bags")
        return out
    # the bag graph must be a tree
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != nb or len({frozenset(e) for e in td.tree_edges}) != nb - 1:
        out.append("bag graph is not a tree")

    holders = defaultdict(list)
    for i, bag in enumerate(td.bags):
        for v in bag:
            holders[v].append(i)
    for v in range(g.n):
        if v not in holders:
            out.append(f"(i) vertex {v} in no bag")
    for u, v in g.edges():
        if not any(v in td.bags[i] for i in holders.get(u, ())):
            out.append(f"(ii) edge ({u}, {v}) in no bag")
    for v, ids in holders.items():
        ids = set(ids)
        start = next(iter(ids))
        reach = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in ids and y not in reach:
                    reach.add(y)
                    queue.append(y)
        if reach != ids:
            out.append(f"(iii) bags holding vertex {v} are not connected")
    return out


def heuristic_decomposition(g: VertexWeightedGraph) -> TreeDecomposition:
    """Min-degree elimination ordering (no width guarantee)."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    _, T = treewidth_min_degree(G)
    nodes = sorted(T.nodes(), key=lambda b: (len(b), sorted(b)))
    index = {b: i for i, b in enumerate(nodes)}
    edges = sorted(tuple(sorted((index[a], index[b]))) for a, b in T.edges())
    return TreeDecomposition(tuple(nodes), tuple(edges))


def parse_td(text: str) -> TreeDecomposition:
    """PACE format: ``s td <#bags> <max bag size> <n>``, ``b <id> <v...>``, then ``<id> <id>`` lines."""
    header = None
    bags = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        try:
            if toks[0] == "s":
                if header is not None or len(toks) != 5 or toks[1] != "td":
                    raise ParseError("header must read 's td <bags> <width+1> <n>'", lineno)
                header = tuple(int(t) for t in toks[2:])
            elif header is None:
                raise ParseError("line before 's td' header", lineno)
            elif toks[0] == "b":
                bid = int(toks[1])
                if not 1 <= bid <= header[0] or bid in bags:
                    raise ParseError(f"bad or duplicate bag id {bid}", lineno)
                vs = [int(t) - 1 for t in toks[2:]]
                if any(not 0 <= v < header[2] for v in vs):
                    raise ParseError("bag vertex out of range", lineno)
                bags[bid] = frozenset(vs)
            else:
                if len(toks) != 2:
                    raise ParseError("tree edge line must be '<id> <id>'", lineno)
                edges.append((int(toks[0]) - 1, int(toks[1]) - 1))
        except ValueError:
            raise ParseError("non-integer token", lineno) from None
    if header is None:
        raise ParseError("missing 's td' header")
    if len(bags) != header[0]:
        raise ParseError(f"header declares {header[0]} bags, found {len(bags)}")
    return TreeDecomposition(tuple(bags[i] for i in range(1, header[0] + 1)), tuple(edges))


def write_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    lines += [f"{a + 1} {b + 1}" for a, b in td.tree_edges]
    return "\n".join(lines) + "\n"


def read_td(path) -> TreeDecomposition:
    return parse_td(Path(path).read_text())


# -- extended nice decompositions --------------------------------------------

LEAF = "leaf"
INTRODUCE_VERTEX = "introduce_vertex"
INTRODUCE_EDGE = "introduce_edge"
FORGET = "forget"
JOIN = "join"


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: frozenset
    children: tuple = ()
    vertex: Optional[int] = None
    edge: Optional[tuple] = None


@dataclass(frozen=True)
class ExtendedNiceDecomposition:
    """Nodes in post-order (children before parents); the root is the last node."""

    nodes: tuple

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(len(nd.bag) for nd in self.nodes) - 1


def make_extended_nice(g: VertexWeightedGraph, td: TreeDecomposition) -> ExtendedNiceDecomposition:
    """Root at bag 0; each edge is introduced once, right after its later endpoint."""
    problems = validate_decomposition(g, td)
    if problems:
        raise InstanceError("invalid tree decomposition: " + "; ".join(problems))
    nodes = []
    introduced_edges = set()
    nm = g.nbr_mask

    def add(kind, bag, children=(), vertex=None, edge=None):
        nodes.append(NiceNode(kind, frozenset(bag), tuple(children), vertex, edge))
        return len(nodes) - 1

    def move(top, src_bag, dst_bag):
        """Forget src - dst, then introduce dst - src (with edges)."""
        bag = set(src_bag)
        for v in sorted(src_bag - dst_bag):
            bag.discard(v)
            top = add(FORGET, bag, (top,), vertex=v)
        for v in sorted(dst_bag - src_bag):
            bag.add(v)
            top = add(INTRODUCE_VERTEX, bag, (top,), vertex=v)
            for u in sorted(bag):
                if u != v and (nm[v] >> u) & 1:
                    e = (min(u, v), max(u, v))
                    if e not in introduced_edges:
                        introduced_edges.add(e)
                        top = add(INTRODUCE_EDGE, bag, (top,), edge=e)
        return top

    adj = defaultdict(list)
    for a, b in td.tree_edges:
        adj[a].append(b)
        adj[b].append(a)
    # iterative post-order over the bag tree rooted at 0
    parent = {0: None}
    order = []
    stack = [0]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in sorted(adj[x], reverse=True):
            if y not in parent:
                parent[y] = x
                stack.append(y)
    top_of = {}
    for x in reversed(order):
        bag = td.bags[x]
        kids = [y for y in adj[x] if parent.get(y) == x]
        kids.sort()
        if not kids:
            top_of[x] = move(add(LEAF, ()), frozenset(), bag)
            continue
        tops = [move(top_of[y], td.bags[y], bag) for y in kids]
        cur = tops[0]
        for other in tops[1:]:
            cur = add(JOIN, bag, (cur, other))
        top_of[x] = cur
    move(top_of[0], td.bags[0], frozenset())
    return ExtendedNiceDecomposition(tuple(nodes))


def check_extended_nice(g: VertexWeightedGraph, nice: ExtendedNiceDecomposition) -> list:
    """Violations of the extended-nice invariants (empty list when valid)."""
    out = []
    nodes = nice.nodes
    if not nodes:
        return ["no nodes"]
    if nodes[nice.root].bag:
        out.append("root bag not empty")
    parents = [0] * len(nodes)
    edge_count = defaultdict(int)
    for i, nd in enumerate(nodes):
        for c in nd.children:
            if not 0 <= c < i:
                out.append(f"node {i}: child {c} not before parent")
                continue
            parents[c] += 1
        kids = [nodes[c] for c in nd.children if 0 <= c < i]
        if nd.kind == LEAF:
            if nd.children or nd.bag:
                out.append(f"leaf {i} has children or a nonempty bag")
        elif nd.kind == INTRODUCE_VERTEX:
            if len(kids) != 1 or nd.vertex in kids[0].bag or nd.bag != kids[0].bag | {nd.vertex}:
                out.append(f"introduce-vertex {i} malformed")
        elif nd.kind == INTRODUCE_EDGE:
            u, v = nd.edge
            edge_count[(min(u, v), max(u, v))] += 1
            if len(kids) != 1 or nd.bag != kids[0].bag or u not in nd.bag or v not in nd.bag:
                out.append(f"introduce-edge {i} malformed")
            elif not g.has_edge(u, v):
                out.append(f"introduce-edge {i} labels a non-edge")
            else:
                # walk down through the run of edge introductions
                j = nd.children[0]
                while nodes[j].kind == INTRODUCE_EDGE:
                    j = nodes[j].children[0]
                if not (nodes[j].kind == INTRODUCE_VERTEX and nodes[j].vertex in (u, v)):
                    out.append(f"edge {(u, v)} not introduced right after an endpoint")
        elif nd.kind == FORGET:
            if len(kids) != 1 or nd.vertex not in kids[0].bag or nd.bag != kids[0].bag - {nd.vertex}:
                out.append(f"forget {i} malformed")
        elif nd.kind == JOIN:
            if len(kids) != 2 or any(k.bag != nd.bag for k in kids):
                out.append(f"join {i} malformed")
        else:
            out.append(f"node {i}: unknown kind {nd.kind}")
    if any(c != 1 for c in parents[:-1]) or parents[-1] != 0:
        out.append("nodes do not form a single rooted tree")
    for e in g.edges():
        if edge_count.get(e, 0) != 1:
            out.append(f"edge {e} introduced {edge_count.get(e, 0)} times")
    return out
