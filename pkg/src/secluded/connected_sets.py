"""Secluded Steiner Tree via connected sets with small closed neighborhood.

Growth is anchored at one vertex. At every step the smallest undecided
boundary vertex is either pulled into the set or excluded for good, so each
branch spends one unit of size or one unit of boundary. A set of size b+1
with f boundary vertices therefore sits at the end of a unique
include/exclude word with b includes and f excludes, which caps the count
at C(b+f, b).
"""

from __future__ import annotations

from typing import Iterator, Optional

from .graph import SecludedInstance, Solution, VertexWeightedGraph, bits
from .steiner import dreyfus_wagner


def _grow(g: VertexWeightedGraph, v: int, max_size: int, max_boundary: int,
          max_total: int) -> Iterator[tuple]:
    """Yield (set mask, open neighborhood mask) for every connected set containing v
    with |B| <= max_size, |N(B)| <= max_boundary and |N[B]| <= max_total."""
    nm = g.nbr_mask
    start = 1 << v
    stack = [(start, nm[v], 0)]
    while stack:
        B, nb, X = stack.pop()
        nb_count = nb.bit_count()
        size = B.bit_count()
        if size + nb_count > max_total:
            continue
        undecided = nb & ~X
        if not undecided:
            if nb_count <= max_boundary:
                yield B, nb
            continue
        low = undecided & -undecided
        # exclude first on the stack so the include branch is explored first
        if X.bit_count() + 1 <= max_boundary:
            stack.append((B, nb, X | low))
        if size + 1 <= max_size:
            u = low.bit_length() - 1
            B2 = B | low
            stack.append((B2, (nb | nm[u]) & ~B2, X))


def enumerate_connected_sets(g: VertexWeightedGraph, v: int, b: int, f: int) -> list:
    """Connected B with v in B, |B| = b+1 and |N(B)| = f, in discovery order."""
    g.check_vertex(v)
    if b < 0 or f < 0:
        return []
    out = []
    for B, nb in _grow(g, v, b + 1, f, b + 1 + f):
        if B.bit_count() == b + 1 and nb.bit_count() == f:
            out.append(frozenset(bits(B)))
    return out


def connected_sets_within(g: VertexWeightedGraph, v: int, k: int) -> Iterator[tuple]:
    """(mask, N(mask)) for every connected set containing v with |N[B]| <= k.

    This is the union of all cells (b, f) with b + 1 + f <= k walked in one
    pass; pruning uses |B| + |N(B)|, which never shrinks as B grows.
    """
    return _grow(g, v, k, k, k)


def _best_within(inst: SecludedInstance, k: int) -> tuple:
    g = inst.graph
    smask = inst.terminal_mask
    C = inst.cost_budget
    best_key, best_mask, visited = None, 0, 0
    for B, nb in connected_sets_within(g, inst.terminals[0], k):
        visited += 1
        if B & smask != smask:
            continue
        closed = B | nb
        exposure = closed.bit_count()
        if best_key is not None and exposure > best_key[0]:
            continue
        cost = g.mask_cost(closed)
        if C is not None and cost > C:
            continue
        key = (exposure, cost, tuple(bits(B)))
        if best_key is None or key < best_key:
            best_key, best_mask = key, B
    return best_mask if best_key else None, visited


def solve_secluded_steiner(inst: SecludedInstance) -> Optional[Solution]:
    """Best connected S-superset anchored at the first terminal.

    With no exposure budget the budget is raised from the Steiner size ell
    until something fits.
    """
    g = inst.graph
    if inst.exposure_budget is not None:
        budgets = [inst.exposure_budget]
    else:
        st = dreyfus_wagner(g, inst.terminals)
        if st is None:
            return None
        budgets = range(st.ell, g.n + 1)
    visited_total = 0
    for k in budgets:
        mask, visited = _best_within(inst, k)
        visited_total += visited
        if mask is not None:
            return Solution.from_mask(g, mask, engine="enum", budget=k, sets_visited=visited_total)
    return None
