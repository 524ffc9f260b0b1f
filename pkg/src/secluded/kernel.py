"""Polynomial kernel for graphs with a small vertex cover.

Given a vertex-cover bound w, the kernel has at most 2w(k+1) vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InstanceError
from .graph import SecludedInstance, VertexWeightedGraph, bits, mask_of

KERNEL = "KERNEL"
NO = "NO"
YES_TRIVIAL = "YES-TRIVIAL"


@dataclass(frozen=True)
class KernelOutcome:
    verdict: str
    instance: Optional[SecludedInstance] = None
    reason: str = ""
    w: Optional[int] = None
    X: frozenset = frozenset()
    Y: frozenset = frozenset()
    I: frozenset = frozenset()
    I_prime: frozenset = frozenset()
    # kernel vertex -> original vertex, None for padding
    vertex_map: tuple = ()
    padding: int = 0


def matching_vertex_cover(g: VertexWeightedGraph) -> frozenset:
    """Endpoints of a greedy maximal matching over edges in lexicographic order."""
    matched = 0
    for u, v in g.edges():
        if not (matched >> u) & 1 and not (matched >> v) & 1:
            matched |= (1 << u) | (1 << v)
    return frozenset(bits(matched))


def _induced(g: VertexWeightedGraph, keep: list):
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges() if u in index and v in index]
    return index, edges


def kernelize(inst: SecludedInstance, w: Optional[int] = None) -> KernelOutcome:
    k = inst.exposure_budget
    if k is None:
        raise InstanceError("kernelization needs an exposure budget k")
    if w is not None and w < 0:
        raise InstanceError("w must be nonnegative")
    g = inst.graph
    C = inst.cost_budget

    if inst.p <= 1:
        closed = g.closed_mask[inst.terminals[0]]
        fits = closed.bit_count() <= k and (C is None or g.mask_cost(closed) <= C)
        return KernelOutcome(YES_TRIVIAL if fits else NO, reason="single terminal")

    # Step 1: keep the component holding the terminals
    comp = g.mask_component(g.full_mask, inst.terminals[0])
    if inst.terminal_mask & ~comp:
        return KernelOutcome(NO, reason="terminals in different components")
    keep = list(bits(comp))
    index, edges = _induced(g, keep)
    h = VertexWeightedGraph.from_edges(len(keep), edges, [g.omega[v] for v in keep])
    terms = [index[t] for t in inst.terminals]
    orig = keep

    def back(mask):
        return frozenset(orig[v] for v in bits(mask))

    # Step 2: matching-based vertex cover
    X = mask_of(matching_vertex_cover(h))
    if w is None:
        w = (X.bit_count() + 1) // 2
    if X.bit_count() > 2 * w:
        return KernelOutcome(NO, reason=f"|X| = {X.bit_count()} > 2w = {2 * w}", w=w, X=back(X))

    # Step 3
    Y = mask_of(v for v in bits(X) if h.degree(v) <= k)
    NY = 0
    for v in bits(Y):
        NY |= h.nbr_mask[v]
    NY &= ~Y
    I = NY & ~X
    Ip = h.full_mask & ~(X | NY)
    smask = mask_of(terms)
    audit = dict(w=w, X=back(X), Y=back(Y), I=back(I), I_prime=back(Ip))
    if smask & (X & ~Y):
        return KernelOutcome(NO, reason="terminal of degree > k", **audit)
    if smask & Ip:
        return KernelOutcome(NO, reason="terminal out of reach of low-degree cover vertices", **audit)

    # Step 4: delete I' and X \ N[Y u I], then pad the high-degree survivors
    YI = Y | I
    closed_YI = h.mask_closed(YI)
    removed = Ip | (X & ~closed_YI)
    survivors = h.full_mask & ~removed
    attach = closed_YI & ~YI & X
    # Padding is added whenever anything was deleted, not only when I' is
    # nonempty: deleting X \ N[Y u I] can also lower the degree of a kept
    # high-degree cover vertex and make it usable in a solution.
    pad = k if (removed and attach) else 0

    kept = list(bits(survivors))
    index2, edges2 = _induced(h, kept)
    n2 = len(kept) + pad
    for j in range(pad):
        pv = len(kept) + j
        edges2.extend((index2[x], pv) for x in bits(attach))
    omega2 = [h.omega[v] for v in kept] + [0] * pad
    g2 = VertexWeightedGraph.from_edges(n2, edges2, omega2)
    inst2 = SecludedInstance(g2, tuple(index2[t] for t in terms), k, C)
    vmap = tuple(orig[v] for v in kept) + (None,) * pad
    return KernelOutcome(KERNEL, inst2, reason="", vertex_map=vmap, padding=pad, **audit)


def size_bound(w: int, k: int) -> int:
    return 2 * w * (k + 1)
