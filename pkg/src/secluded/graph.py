"""Vertex-weighted graphs, neighborhood algebra, instances and certificates.

Vertices are 0-indexed internally. Vertex sets are passed around as
``frozenset`` at the public surface; the engines work on Python ``int``
bitmasks, and the ``mask_*`` helpers here are shared by all of them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .errors import InstanceError

U64_MAX = 2**64 - 1


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(xs: Iterable[int]) -> int:
    m = 0
    for v in xs:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class VertexWeightedGraph:
    """Undirected simple graph with nonnegative integer vertex costs."""

    n: int
    adjacency: tuple
    omega: tuple

    def __post_init__(self):
        if self.n < 0:
            raise InstanceError("negative vertex count")
        if len(self.adjacency) != self.n or len(self.omega) != self.n:
            raise InstanceError("adjacency/omega length must equal n")
        for v, nbrs in enumerate(self.adjacency):
            prev = -1
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise InstanceError(f"neighbor {u} of {v} out of range")
                if u == v:
                    raise InstanceError(f"self-loop at {v}")
                if u <= prev:
                    raise InstanceError(f"neighbors of {v} not sorted/unique")
                prev = u
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if v not in self.adjacency[u]:
                    raise InstanceError(f"asymmetric adjacency {v}-{u}")
        for v, w in enumerate(self.omega):
            if not isinstance(w, int) or w < 0 or w > U64_MAX:
                raise InstanceError(f"weight of {v} must be an unsigned 64-bit integer")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple], omega=None) -> "VertexWeightedGraph":
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InstanceError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise InstanceError(f"self-loop at {u}")
            if v in nbrs[u]:
                raise InstanceError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        if omega is None:
            omega = (1,) * n
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), tuple(omega))

    @property
    def W(self) -> int:
        return max(self.omega, default=0)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> Iterator[tuple]:
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (self.nbr_mask[u] >> v) & 1 == 1

    def is_unit_weight(self) -> bool:
        return all(w == 1 for w in self.omega)

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise InstanceError(f"vertex {v} out of range [0, {self.n})")

    @cached_property
    def nbr_mask(self) -> list:
        return [mask_of(a) for a in self.adjacency]

    @cached_property
    def closed_mask(self) -> list:
        return [m | (1 << v) for v, m in enumerate(self.nbr_mask)]

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def _cost_tables(self) -> list:
        # per-byte lookup tables so mask_cost is a handful of index operations
        tables = []
        for base in range(0, self.n, 8):
            chunk = self.omega[base:base + 8]
            t = [0] * 256
            for b in range(1, 256):
                low = (b & -b).bit_length() - 1
                t[b] = t[b & (b - 1)] + (chunk[low] if low < len(chunk) else 0)
            tables.append(t)
        return tables

    # -- bitmask primitives shared by the engines --------------------------

    def mask_closed(self, mask: int) -> int:
        out = mask
        cm = self.closed_mask
        while mask:
            low = mask & -mask
            out |= cm[low.bit_length() - 1]
            mask ^= low
        return out

    def mask_cost(self, mask: int) -> int:
        total = 0
        for t in self._cost_tables:
            total += t[mask & 255]
            mask >>= 8
        if total > U64_MAX:
            raise InstanceError("cost sum overflows 64 bits")
        return total

    def mask_component(self, allowed: int, start: int) -> int:
        """Vertices reachable from ``start`` inside G[allowed] (start must be allowed)."""
        nm = self.nbr_mask
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            while frontier:
                low = frontier & -frontier
                nxt |= nm[low.bit_length() - 1]
                frontier ^= low
            nxt &= allowed & ~comp
            comp |= nxt
            frontier = nxt
        return comp

    def mask_connected(self, mask: int) -> bool:
        if not mask:
            return False
        start = (mask & -mask).bit_length() - 1
        return self.mask_component(mask, start) == mask


def _check_set(g: VertexWeightedGraph, xs) -> frozenset:
    xs = frozenset(xs)
    for v in xs:
        g.check_vertex(v)
    return xs


def closed_neighborhood(g: VertexWeightedGraph, xs) -> frozenset:
    xs = _check_set(g, xs)
    return frozenset(bits(g.mask_closed(mask_of(xs))))


def open_neighborhood(g: VertexWeightedGraph, xs) -> frozenset:
    xs = _check_set(g, xs)
    m = mask_of(xs)
    return frozenset(bits(g.mask_closed(m) & ~m))


def exposure_and_cost(g: VertexWeightedGraph, tree_vertices) -> tuple:
    """(|N[xs]|, omega(N[xs])). Connectivity is the caller's business."""
    xs = _check_set(g, tree_vertices)
    if not xs:
        raise InstanceError("exposure of an empty vertex set is undefined")
    closed = g.mask_closed(mask_of(xs))
    return closed.bit_count(), g.mask_cost(closed)


def connected_component_of(g: VertexWeightedGraph, v: int) -> frozenset:
    g.check_vertex(v)
    return frozenset(bits(g.mask_component(g.full_mask, v)))


def is_connected_within(g: VertexWeightedGraph, xs) -> bool:
    xs = _check_set(g, xs)
    return g.mask_connected(mask_of(xs))


def bfs_order(g: VertexWeightedGraph, start: int, allowed: Optional[int] = None) -> list:
    """Breadth-first visiting order from start, optionally restricted to a mask."""
    if allowed is None:
        allowed = g.full_mask
    seen = 1 << start
    order = [start]
    queue = deque(order)
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if (allowed >> w) & 1 and not (seen >> w) & 1:
                seen |= 1 << w
                order.append(w)
                queue.append(w)
    return order


@dataclass(frozen=True)
class SecludedInstance:
    graph: VertexWeightedGraph
    terminals: tuple
    exposure_budget: Optional[int] = None
    cost_budget: Optional[int] = None

    def __post_init__(self):
        terms = tuple(self.terminals)
        object.__setattr__(self, "terminals", terms)
        if not 1 <= len(terms) <= self.graph.n:
            raise InstanceError("need 1 <= p <= n terminals")
        if len(set(terms)) != len(terms):
            raise InstanceError("duplicate terminal")
        for t in terms:
            self.graph.check_vertex(t)
        for name in ("exposure_budget", "cost_budget"):
            b = getattr(self, name)
            if b is not None and (not isinstance(b, int) or b < 0):
                raise InstanceError(f"{name} must be a nonnegative integer")

    @property
    def p(self) -> int:
        return len(self.terminals)

    @property
    def terminal_mask(self) -> int:
        return mask_of(self.terminals)

    def with_budget(self, k=None, C=None) -> "SecludedInstance":
        return SecludedInstance(self.graph, self.terminals, k, C if C is not None else self.cost_budget)

    def within_budget(self, exposure: int, cost: int) -> bool:
        if self.exposure_budget is not None and exposure > self.exposure_budget:
            return False
        if self.cost_budget is not None and cost > self.cost_budget:
            return False
        return True


@dataclass(frozen=True)
class Solution:
    tree_vertices: frozenset
    closed_neighborhood: frozenset
    exposure: int
    cost: int
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_mask(cls, g: VertexWeightedGraph, mask: int, **stats) -> "Solution":
        closed = g.mask_closed(mask)
        return cls(frozenset(bits(mask)), frozenset(bits(closed)),
                   closed.bit_count(), g.mask_cost(closed), dict(stats))

    @classmethod
    def from_vertices(cls, g: VertexWeightedGraph, xs, **stats) -> "Solution":
        return cls.from_mask(g, mask_of(_check_set(g, xs)), **stats)

    def key(self) -> tuple:
        """Tie-break order shared by every engine: exposure, cost, sorted vertex set."""
        return self.exposure, self.cost, tuple(sorted(self.tree_vertices))


def verify(solution: Solution, instance: SecludedInstance, check_budgets: bool = True) -> list:
    """Return the violated clauses of a claimed certificate (empty list when valid)."""
    g = instance.graph
    problems = []
    tree = set(solution.tree_vertices)
    bad = [v for v in tree if not (isinstance(v, int) and 0 <= v < g.n)]
    if bad:
        return [f"vertex out of range: {sorted(bad)}"]
    if not tree:
        return ["empty tree"]
    missing = [t for t in instance.terminals if t not in tree]
    if missing:
        problems.append(f"terminals not covered: {missing}")
    mask = mask_of(tree)
    if not g.mask_connected(mask):
        problems.append("not connected")
    closed = g.mask_closed(mask)
    if mask_of(solution.closed_neighborhood) != closed or len(set(solution.closed_neighborhood)) != closed.bit_count():
        problems.append("closed neighborhood mismatch")
    exposure = closed.bit_count()
    cost = g.mask_cost(closed)
    if solution.exposure != exposure:
        problems.append(f"exposure mismatch: claimed {solution.exposure}, actual {exposure}")
    if solution.cost != cost:
        problems.append(f"cost mismatch: claimed {solution.cost}, actual {cost}")
    if check_budgets:
        k, C = instance.exposure_budget, instance.cost_budget
        if k is not None and exposure > k:
            problems.append(f"exposure {exposure} exceeds budget {k}")
        if C is not None and cost > C:
            problems.append(f"cost {cost} exceeds budget {C}")
    return problems


def best(candidates) -> Optional[Solution]:
    """Minimum of an iterable of solutions under ``Solution.key``."""
    out = None
    for s in candidates:
        if out is None or s.key() < out.key():
            out = s
    return out
