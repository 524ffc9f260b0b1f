"""Write every connected graph on 8 vertices (up to isomorphism) as graph6.

The graph atlas stops at 7 vertices, so 8-vertex graphs are grown by attaching
a new vertex to each 7-vertex graph in every possible way and deduplicating
isomorphic copies. Output: tests/data/connected8.g6 (11117 lines).
"""
import itertools
import sys
from collections import defaultdict
from pathlib import Path

import networkx as nx

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "connected8.g6"


def main():
    base = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == 7]
    buckets = defaultdict(list)
    for g in base:
        for r in range(1, 8):
            for nbrs in itertools.combinations(range(7), r):
                h = g.copy()
                h.add_node(7)
                h.add_edges_from((7, v) for v in nbrs)
                if not nx.is_connected(h):
                    continue
                degs = tuple(sorted(d for _, d in h.degree()))
                key = (h.number_of_edges(), degs, nx.weisfeiler_lehman_graph_hash(h, iterations=3))
                reps = buckets[key]
                if not any(nx.is_isomorphic(h, o) for o in reps):
                    reps.append(h)
    graphs = [g for reps in buckets.values() for g in reps]
    graphs.sort(key=lambda g: (g.number_of_edges(), nx.to_graph6_bytes(g, header=False)))
    with open(OUT, "wb") as fh:
        for g in graphs:
            fh.write(nx.to_graph6_bytes(g, header=False))
    print(len(graphs), file=sys.stderr)


if __name__ == "__main__":
    main()
