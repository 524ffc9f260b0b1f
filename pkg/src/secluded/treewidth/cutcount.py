"""Cut&Count over an extended nice tree decomposition.

Each bag vertex gets one of four colors: red and blue (inside X, split into
two sides with no edge between them), green (in Y) and white (outside).
Counting colored triples modulo 4 cancels every disconnected X, since a
candidate with l components appears 2^l times.

Tables are dense ``uint8`` arrays of shape (4^|bag|, S, W). The coloring
index is base 4 over the sorted bag, lowest vertex in the lowest digit.
The last two axes hold the size and weight of *forgotten* vertices only, so
the true (s, w) of an entry is (s_off + s(f), w_off + w(f)). With this
offset, introduce nodes copy data without shifting and a join is a plain
2D convolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import EngineMismatch, InstanceError
from ..graph import SecludedInstance, VertexWeightedGraph
from .decomposition import (FORGET, INTRODUCE_EDGE, INTRODUCE_VERTEX, JOIN, LEAF,
                            ExtendedNiceDecomposition, TreeDecomposition,
                            heuristic_decomposition, make_extended_nice)

WHITE, GREEN, RED, BLUE = 0, 1, 2, 3
COLOR_NAMES = ("white", "green", "red", "blue")
# colour pairs an edge may not join: red-blue, red-white, blue-white
FORBIDDEN_PAIRS = frozenset({frozenset({RED, BLUE}), frozenset({RED, WHITE}), frozenset({BLUE, WHITE})})

_FFT_MIN = 64  # nonzero (s, w) cells per side before the join switches to FFT


@dataclass
class DpTable:
    """Table of one nice node. ``data[f, s_off, w_off]`` is c[h, f, s_off + s(f), w_off + w(f)] mod 4."""

    bag: tuple
    data: np.ndarray
    weights: tuple = ()

    def digits(self, f: int) -> list:
        return [(f >> (2 * i)) & 3 for i in range(len(self.bag))]

    def bag_offsets(self, f: int) -> tuple:
        s = w = 0
        for v, c in zip(self.bag, self.digits(f)):
            if c != WHITE:
                s += 1
            if c in (RED, BLUE):
                w += self.weights[v]
        return s, w

    def value(self, coloring: dict, s: int, w: int) -> int:
        """c[h, f, s, w] for a coloring given as {vertex: colour}."""
        if set(coloring) != set(self.bag):
            raise InstanceError("coloring must cover exactly the bag")
        f = sum(coloring[v] << (2 * i) for i, v in enumerate(self.bag))
        ds, dw = self.bag_offsets(f)
        so, wo = s - ds, w - dw
        if 0 <= so < self.data.shape[1] and 0 <= wo < self.data.shape[2]:
            return int(self.data[f, so, wo])
        return 0

    def entries(self) -> dict:
        """{(f, s, w): value} over nonzero entries, with true s and w."""
        out = {}
        for f, so, wo in zip(*np.nonzero(self.data)):
            ds, dw = self.bag_offsets(int(f))
            out[(int(f), int(so) + ds, int(wo) + dw)] = int(self.data[f, so, wo])
        return out

    def root_counts(self) -> dict:
        """{(s, w): value} for the empty bag."""
        if self.bag:
            raise InstanceError("root_counts needs an empty bag")
        return {(int(s), int(w)): int(self.data[0, s, w]) for s, w in zip(*np.nonzero(self.data[0]))}

    @property
    def nonzero(self) -> int:
        return int(np.count_nonzero(self.data))


@dataclass
class CountStats:
    nodes: int = 0
    max_table_cells: int = 0
    max_bag: int = 0
    joins_fft: int = 0
    joins_sparse: int = 0


def _trim(a: np.ndarray) -> np.ndarray:
    """Drop trailing all-zero weight columns (keep at least one)."""
    nz = np.nonzero(a.any(axis=(0, 1)))[0]
    last = int(nz[-1]) + 1 if nz.size else 1
    return a[:, :, :last] if last < a.shape[2] else a


def _introduce_vertex(a, pos, nbag, terminal):
    hi = 4 ** (nbag - 1 - pos)
    lo = 4 ** pos
    _, S, W = a.shape
    old = a.reshape(hi, lo, S, W)
    new = np.zeros((hi, 4, lo, S, W), dtype=np.uint8)
    for c in (RED, BLUE) if terminal else (WHITE, GREEN, RED, BLUE):
        new[:, c] = old
    return new.reshape(hi * 4 * lo, S, W)


def _introduce_edge(a, pu, pv, nbag):
    idx = np.arange(4 ** nbag)
    cu = (idx >> (2 * pu)) & 3
    cv = (idx >> (2 * pv)) & 3
    bad = np.zeros(idx.shape, dtype=bool)
    for pair in FORBIDDEN_PAIRS:
        x, y = tuple(pair)
        bad |= ((cu == x) & (cv == y)) | ((cu == y) & (cv == x))
    a = a.copy()
    a[bad] = 0
    return a


def _forget(a, pos, nbag_old, wv, s_cap):
    hi = 4 ** (nbag_old - 1 - pos)
    lo = 4 ** pos
    _, S, W = a.shape
    old = a.reshape(hi, 4, lo, S, W)
    S2 = S + 1 if s_cap is None else min(S + 1, s_cap + 1)
    out = np.zeros((hi, lo, S2, W + wv), dtype=np.uint16)
    out[:, :, :min(S, S2), :W] += old[:, WHITE, :, :S2]
    for c, dw in ((GREEN, 0), (RED, wv), (BLUE, wv)):
        # s_off grows by one for each non-white forgotten vertex
        out[:, :, 1:, dw:dw + W] += old[:, c, :, :S2 - 1]
    out &= 3
    return _trim(out.astype(np.uint8).reshape(hi * lo, S2, W + wv))


def _join(a, b, s_cap, stats):
    C = a.shape[0]
    S = a.shape[1] + b.shape[1] - 1
    W = a.shape[2] + b.shape[2] - 1
    if s_cap is not None:
        S = min(S, s_cap + 1)
    out = np.zeros((C, S, W), dtype=np.uint8)
    live = np.nonzero(a.reshape(C, -1).any(axis=1) & b.reshape(C, -1).any(axis=1))[0]
    if live.size == 0:
        return _trim(out)
    cells = max(int(np.count_nonzero(a[live])), int(np.count_nonzero(b[live]))) / live.size
    if cells <= _FFT_MIN:
        stats.joins_sparse += 1
        for f in live:
            A, B = a[f], b[f]
            acc = np.zeros((S + B.shape[0], W), dtype=np.int64)
            for s1, w1 in zip(*np.nonzero(A)):
                if s1 >= S:
                    continue
                acc[s1:s1 + B.shape[0], w1:w1 + B.shape[1]] += int(A[s1, w1]) * B
            out[f] = (acc[:S] & 3).astype(np.uint8)
        return _trim(out)
    stats.joins_fft += 1
    shape = (a.shape[1] + b.shape[1] - 1, W)
    chunk = max(1, 2 ** 22 // (shape[0] * shape[1]))
    for start in range(0, live.size, chunk):
        ids = live[start:start + chunk]
        fa = np.fft.rfft2(a[ids].astype(np.float64), s=shape)
        fb = np.fft.rfft2(b[ids].astype(np.float64), s=shape)
        conv = np.rint(np.fft.irfft2(fa * fb, s=shape)).astype(np.int64)
        out[ids] = (conv[:, :S] & 3).astype(np.uint8)
    return _trim(out)


def count_nice_triples(g: VertexWeightedGraph, S, nice: ExtendedNiceDecomposition, weights,
                       size_cap: Optional[int] = None, keep_tables: bool = False):
    """Run the DP bottom-up. Returns (root DpTable, per-node tables or None, CountStats).

    ``size_cap`` drops entries with more than that many forgotten vertices in
    X u Y; entries with true size <= size_cap at the root are unaffected.
    """
    weights = tuple(int(x) for x in weights)
    if len(weights) != g.n or any(x < 0 for x in weights):
        raise InstanceError("need one nonnegative weight per vertex")
    terminals = frozenset(S)
    stats = CountStats()
    tables = [None] * len(nice.nodes)
    kept = [] if keep_tables else None
    remaining = [0] * len(nice.nodes)
    for nd in nice.nodes:
        for c in nd.children:
            remaining[c] += 1
    for i, nd in enumerate(nice.nodes):
        bag = tuple(sorted(nd.bag))
        if nd.kind == LEAF:
            a = np.ones((1, 1, 1), dtype=np.uint8)
        elif nd.kind == INTRODUCE_VERTEX:
            a = _introduce_vertex(tables[nd.children[0]], bag.index(nd.vertex), len(bag), nd.vertex in terminals)
        elif nd.kind == INTRODUCE_EDGE:
            u, v = nd.edge
            a = _introduce_edge(tables[nd.children[0]], bag.index(u), bag.index(v), len(bag))
        elif nd.kind == FORGET:
            child_bag = tuple(sorted(nice.nodes[nd.children[0]].bag))
            a = _forget(tables[nd.children[0]], child_bag.index(nd.vertex), len(child_bag),
                        weights[nd.vertex], size_cap)
        elif nd.kind == JOIN:
            a = _join(tables[nd.children[0]], tables[nd.children[1]], size_cap, stats)
        else:
            raise InstanceError(f"unknown node kind {nd.kind}")
        tables[i] = a
        stats.nodes += 1
        stats.max_table_cells = max(stats.max_table_cells, a.size)
        stats.max_bag = max(stats.max_bag, len(bag))
        if keep_tables:
            kept.append(DpTable(bag, a, weights))
        for c in nd.children:
            remaining[c] -= 1
            if remaining[c] == 0:
                tables[c] = None
    root = DpTable((), tables[nice.root], weights)
    return root, kept, stats


def sample_isolation_weights(n: int, seed: int, repeat: int = 0) -> np.ndarray:
    """Independent uniform weights in 1..2n, keyed by (seed, repeat)."""
    if n < 1:
        raise InstanceError("n must be >= 1")
    rng = np.random.default_rng([seed, repeat])
    return rng.integers(1, 2 * n + 1, size=n)


@dataclass
class TreewidthResult:
    exposure: Optional[int]
    repeats: int
    hits: list = field(default_factory=list)  # smallest hit size per repeat (None if none)
    width: int = -1
    stats: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.exposure is not None


def solve_treewidth(inst: SecludedInstance, td: Optional[TreeDecomposition] = None,
                    repeats: int = 20, seed: int = 0) -> TreewidthResult:
    """Smallest exposure s (<= k) with a nonzero count at the root over ``repeats`` weightings.

    A reported s is always achievable. A miss at the optimum has probability
    at most 2^-repeats.
    """
    g = inst.graph
    if not g.is_unit_weight():
        raise EngineMismatch("Cut&Count handles unit costs only")
    if repeats < 1:
        raise InstanceError("repeats must be >= 1")
    cap = g.n
    for bound in (inst.exposure_budget, inst.cost_budget):
        if bound is not None:
            cap = min(cap, bound)
    if td is None:
        td = heuristic_decomposition(g)
    nice = make_extended_nice(g, td)
    hits = []
    agg = CountStats()
    for rep in range(repeats):
        w = sample_isolation_weights(g.n, seed, rep)
        root, _, st = count_nice_triples(g, inst.terminals, nice, w, size_cap=cap)
        agg.joins_fft += st.joins_fft
        agg.joins_sparse += st.joins_sparse
        agg.max_table_cells = max(agg.max_table_cells, st.max_table_cells)
        sizes = np.nonzero(root.data[0].any(axis=1))[0]
        sizes = sizes[sizes <= cap]
        hits.append(int(sizes[0]) if sizes.size else None)
    found = [h for h in hits if h is not None]
    stats = {"nice_nodes": len(nice.nodes), "max_table_cells": agg.max_table_cells,
             "joins_fft": agg.joins_fft, "joins_sparse": agg.joins_sparse, "width": td.width}
    return TreewidthResult(min(found) if found else None, repeats, hits, td.width, stats)
