"""Line-oriented instance format.

::

    c any comment (lines starting with '#' are comments too)
    p secluded <n> <m>
    e <u> <v>          edge, 1-indexed
    w <v> <weight>     vertex cost (default 1)
    t <v>              terminal, in order
    k <int>            optional exposure budget
    b <int>            optional cost budget
"""

from __future__ import annotations

from pathlib import Path

from .errors import InstanceError, ParseError
from .graph import U64_MAX, SecludedInstance, VertexWeightedGraph


def _int(tok, lineno, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} is not an integer: {tok!r}", lineno) from None


def parse_instance(text: str) -> SecludedInstance:
    n = m_declared = None
    edges, seen_edges = [], set()
    weights = {}
    terminals = []
    k = C = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#c":
            continue
        toks = line.split()
        tag = toks[0]
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate 'p' header", lineno)
            if len(toks) != 4 or toks[1] != "secluded":
                raise ParseError("header must read 'p secluded <n> <m>'", lineno)
            n = _int(toks[2], lineno, "n")
            m_declared = _int(toks[3], lineno, "m")
            if n < 1 or m_declared < 0:
                raise ParseError("need n >= 1 and m >= 0", lineno)
            continue
        if n is None:
            raise ParseError(f"'{tag}' line before 'p' header", lineno)

        def vertex(tok):
            v = _int(tok, lineno, "vertex")
            if not 1 <= v <= n:
                raise ParseError(f"vertex {v} out of range 1..{n}", lineno)
            return v - 1

        if tag == "e":
            if len(toks) != 3:
                raise ParseError("edge line must be 'e <u> <v>'", lineno)
            u, v = vertex(toks[1]), vertex(toks[2])
            if u == v:
                raise ParseError(f"self-loop at {u + 1}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise ParseError(f"duplicate edge {u + 1} {v + 1}", lineno)
            seen_edges.add(key)
            edges.append(key)
        elif tag == "w":
            if len(toks) != 3:
                raise ParseError("weight line must be 'w <v> <weight>'", lineno)
            v = vertex(toks[1])
            w = _int(toks[2], lineno, "weight")
            if w < 0:
                raise ParseError(f"negative weight {w}", lineno)
            if w > U64_MAX:
                raise ParseError("weight exceeds 64 bits", lineno)
            if v in weights:
                raise ParseError(f"duplicate weight for vertex {v + 1}", lineno)
            weights[v] = w
        elif tag == "t":
            if len(toks) != 2:
                raise ParseError("terminal line must be 't <v>'", lineno)
            v = vertex(toks[1])
            if v in terminals:
                raise ParseError(f"duplicate terminal {v + 1}", lineno)
            terminals.append(v)
        elif tag in ("k", "b"):
            if len(toks) != 2:
                raise ParseError(f"budget line must be '{tag} <int>'", lineno)
            val = _int(toks[1], lineno, "budget")
            if val < 0:
                raise ParseError("negative budget", lineno)
            if tag == "k":
                if k is not None:
                    raise ParseError("duplicate 'k' line", lineno)
                k = val
            else:
                if C is not None:
                    raise ParseError("duplicate 'b' line", lineno)
                C = val
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)

    if n is None:
        raise ParseError("missing 'p secluded <n> <m>' header")
    if len(edges) != m_declared:
        raise ParseError(f"header declares {m_declared} edges, found {len(edges)}")
    if not terminals:
        raise ParseError("no terminals")
    omega = tuple(weights.get(v, 1) for v in range(n))
    try:
        g = VertexWeightedGraph.from_edges(n, edges, omega)
        return SecludedInstance(g, tuple(terminals), k, C)
    except ParseError:
        raise
    except InstanceError as exc:
        raise ParseError(str(exc)) from None


def write_instance(inst: SecludedInstance) -> str:
    g = inst.graph
    lines = [f"p secluded {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    lines += [f"w {v + 1} {w}" for v, w in enumerate(g.omega) if w != 1]
    lines += [f"t {t + 1}" for t in inst.terminals]
    if inst.exposure_budget is not None:
        lines.append(f"k {inst.exposure_budget}")
    if inst.cost_budget is not None:
        lines.append(f"b {inst.cost_budget}")
    return "\n".join(lines) + "\n"


def read_instance(path) -> SecludedInstance:
    return parse_instance(Path(path).read_text())


def solution_to_dict(solution, engine: str, seed: int = 0, feasible=None) -> dict:
    """The stable JSON report shape (vertex ids 1-indexed)."""
    if solution is None:
        return {"feasible": False if feasible is None else feasible, "exposure": None, "cost": None,
                "tree_vertices": None, "closed_neighborhood": None,
                "engine": engine, "stats": {}, "seed": seed}
    return {
        "feasible": True,
        "exposure": solution.exposure,
        "cost": solution.cost,
        "tree_vertices": sorted(v + 1 for v in solution.tree_vertices),
        "closed_neighborhood": sorted(v + 1 for v in solution.closed_neighborhood),
        "engine": engine,
        "stats": dict(solution.stats),
        "seed": seed,
    }


def solution_from_dict(d: dict):
    from .graph import Solution

    try:
        return Solution(
            frozenset(int(v) - 1 for v in d["tree_vertices"]),
            frozenset(int(v) - 1 for v in d["closed_neighborhood"]),
            int(d["exposure"]),
            int(d["cost"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"malformed solution JSON: {exc}") from None
