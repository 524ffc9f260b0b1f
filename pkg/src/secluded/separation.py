"""Random separation for Secluded Steiner Tree above the Steiner guarantee.

Each trial colors vertices red/blue uniformly, then repeatedly grows the red
component of the first terminal by absorbing whole blue components behind
pendant vertices, until the terminals are joined (accept) or no rule applies
(the trial fails). Accepted trees are re-verified, so a "yes" is never wrong;
"no" is only probable, with the failure bound reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InstanceError
from .graph import (SecludedInstance, Solution, VertexWeightedGraph, bits, mask_of,
                    verify)
from .steiner import dreyfus_wagner


@dataclass(frozen=True)
class RedBlueColoring:
    red: frozenset
    blue: frozenset

    def __post_init__(self):
        if self.red & self.blue:
            raise InstanceError("a vertex cannot be both red and blue")

    @classmethod
    def from_red(cls, g: VertexWeightedGraph, red) -> "RedBlueColoring":
        red = frozenset(red)
        return cls(red, frozenset(range(g.n)) - red)

    @classmethod
    def from_mask(cls, g: VertexWeightedGraph, red_mask: int) -> "RedBlueColoring":
        return cls.from_red(g, bits(red_mask & g.full_mask))


@dataclass(frozen=True)
class SeparationConfig:
    trials: int = 4096
    rng_seed: int = 0
    per_trial_recolor_cap: Optional[int] = None  # None means n

    def __post_init__(self):
        if self.trials < 1:
            raise InstanceError("trials must be >= 1")


@dataclass
class TrialOutcome:
    solution: Optional[Solution]
    step: str  # accept | step1 | step2 | step3 | cap
    recolorings: int = 0
    red_sizes: list = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return self.solution is not None


@dataclass
class SeparationResult:
    solution: Optional[Solution]
    ell: Optional[int]
    r: Optional[int]
    N: Optional[int] = None
    trials_run: int = 0
    failure_bound: float = 0.0  # probability that a yes-instance was missed
    certain: bool = True  # decided without sampling

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def separation_budget(p: int, r: int) -> int:
    """Number of vertices whose colors a successful trial depends on."""
    if p < 2 or r < 1:
        raise ValueError("separation budget needs p >= 2 and r >= 1; smaller cases are trivial")
    return 20 * p + 7 * r - 27


def _trial(g, smask, s_first, k, C, red, cap):
    nm = g.nbr_mask
    full = g.full_mask
    sizes = [red.bit_count()]
    recolor = 0
    while True:
        # Step 1: a red component holding every terminal
        if (red >> s_first) & 1:
            H = g.mask_component(red, s_first)
            if H & smask == smask:
                closed = g.mask_closed(H)
                if (k is None or closed.bit_count() <= k) and (C is None or g.mask_cost(closed) <= C):
                    return H, "accept", recolor, sizes
                return None, "step1", recolor, sizes
        # Step 2: every terminal red with a red neighbor
        for s in bits(smask):
            if not (red >> s) & 1 or not nm[s] & red:
                return None, "step2", recolor, sizes
        # Step 3: a non-terminal pendant of H with exactly one blue neighbor
        blue = full & ~red
        H = g.mask_component(red, s_first)
        grown = False
        for u in bits(H & ~smask):
            if (nm[u] & H).bit_count() != 1:
                continue
            bn = nm[u] & blue
            if bn.bit_count() != 1:
                continue
            if recolor >= cap:
                return None, "cap", recolor, sizes
            red |= g.mask_component(blue, bn.bit_length() - 1)
            recolor += 1
            sizes.append(red.bit_count())
            grown = True
            break
        if not grown:
            return None, "step3", recolor, sizes


def run_trial(inst: SecludedInstance, coloring: RedBlueColoring, recolor_cap: Optional[int] = None) -> TrialOutcome:
    g = inst.graph
    if inst.p < 2:
        raise InstanceError("trials need p >= 2")
    cap = g.n if recolor_cap is None else recolor_cap
    red = mask_of(coloring.red)
    H, step, rec, sizes = _trial(g, inst.terminal_mask, inst.terminals[0],
                                 inst.exposure_budget, inst.cost_budget, red, cap)
    sol = None if H is None else Solution.from_mask(g, H, engine="rs")
    return TrialOutcome(sol, step, rec, sizes)


def coloring_masks(n: int, seed: int, block: int, size: int = 256) -> list:
    """Red masks for trials block*size .. block*size+size-1.

    Each block has its own generator keyed by (seed, block), so any trial
    can be replayed without running the ones before it.
    """
    rng = np.random.default_rng([seed, block])
    nbytes = max(1, (n + 7) // 8)
    raw = rng.integers(0, 256, size=(size, nbytes), dtype=np.uint8)
    full = (1 << n) - 1
    return [int.from_bytes(row.tobytes(), "little") & full for row in raw]


def trial_coloring(g: VertexWeightedGraph, seed: int, index: int) -> RedBlueColoring:
    block, pos = divmod(index, 256)
    return RedBlueColoring.from_mask(g, coloring_masks(g.n, seed, block)[pos])


def solve_above_guarantee(inst: SecludedInstance, r: Optional[int] = None,
                          config: Optional[SeparationConfig] = None) -> SeparationResult:
    """Decide exposure <= ell + r (and cost <= C). Uses the instance budget when r is None."""
    config = config or SeparationConfig()
    g = inst.graph
    st = dreyfus_wagner(g, inst.terminals)
    if st is None:
        return SeparationResult(None, None, r)
    ell = st.ell
    if r is None:
        if inst.exposure_budget is None:
            raise InstanceError("random separation needs r or an exposure budget")
        r = inst.exposure_budget - ell
    if r < 0:
        return SeparationResult(None, ell, r)
    k = ell + r
    C = inst.cost_budget
    budgeted = SecludedInstance(g, inst.terminals, k, C)

    def ok(mask):
        closed = g.mask_closed(mask)
        return closed.bit_count() <= k and (C is None or g.mask_cost(closed) <= C)

    if inst.p == 1:
        s = inst.terminals[0]
        sol = Solution.from_mask(g, 1 << s, engine="rs") if ok(1 << s) else None
        return SeparationResult(sol, ell, r)
    if r == 0:
        # exposure ell forces N[T] = T, so T is a whole component of size ell
        comp = g.mask_component(g.full_mask, inst.terminals[0])
        hit = comp.bit_count() == ell and ok(comp)
        return SeparationResult(Solution.from_mask(g, comp, engine="rs") if hit else None, ell, r)

    N = separation_budget(inst.p, r)
    cap = g.n if config.per_trial_recolor_cap is None else config.per_trial_recolor_cap
    smask = inst.terminal_mask
    s_first = inst.terminals[0]
    done = 0
    block = 0
    while done < config.trials:
        for red in coloring_masks(g.n, config.rng_seed, block):
            if done >= config.trials:
                break
            done += 1
            H, step, _, _ = _trial(g, smask, s_first, k, C, red, cap)
            if H is not None:
                sol = Solution.from_mask(g, H, engine="rs", trials=done, N=N, ell=ell, r=r)
                if verify(sol, budgeted):
                    raise AssertionError("accepted trial failed verification")
                return SeparationResult(sol, ell, r, N, done, 0.0, certain=False)
        block += 1
    bound = float((1.0 - 2.0 ** -N) ** done)
    return SeparationResult(None, ell, r, N, done, bound, certain=False)


# -- structural diagnostics -------------------------------------------------


def greedy_minimize(g: VertexWeightedGraph, tree_vertices, terminals) -> frozenset:
    """Drop non-terminals (ascending id) while the set stays connected, to a fixpoint."""
    mask = mask_of(tree_vertices)
    smask = mask_of(terminals)
    changed = True
    while changed:
        changed = False
        for v in bits(mask & ~smask):
            trial = mask & ~(1 << v)
            if trial and g.mask_connected(trial):
                mask = trial
                changed = True
    return frozenset(bits(mask))


def high_degree_core(g: VertexWeightedGraph, tree_vertices, terminals) -> frozenset:
    """Vertices of degree >= 3 in G[T], plus the terminals."""
    t = mask_of(tree_vertices)
    nm = g.nbr_mask
    core = mask_of(terminals)
    for v in bits(t):
        if (nm[v] & t).bit_count() >= 3:
            core |= 1 << v
    return frozenset(bits(core))


def core_neighbors(g: VertexWeightedGraph, tree_vertices, core) -> frozenset:
    """N_F(X) with F = G[T]."""
    t = mask_of(tree_vertices)
    x = mask_of(core)
    out = 0
    for v in bits(x):
        out |= g.nbr_mask[v]
    return frozenset(bits(out & t & ~x))


def boundary_contacts(g: VertexWeightedGraph, tree_vertices) -> frozenset:
    """Tree vertices adjacent to N(T)."""
    t = mask_of(tree_vertices)
    y = g.mask_closed(t) & ~t
    return frozenset(bits(g.mask_closed(y) & t))


def witness_set(g: VertexWeightedGraph, tree_vertices, terminals) -> dict:
    """The sets whose coloring a trial depends on, for a minimal tree T."""
    t = mask_of(tree_vertices)
    nm = g.nbr_mask
    smask = mask_of(terminals)
    X = high_degree_core(g, tree_vertices, terminals)
    Xp = core_neighbors(g, tree_vertices, X)
    Y = frozenset(bits(g.mask_closed(t) & ~t))
    Yp = boundary_contacts(g, tree_vertices)
    Z = set()
    for v in sorted(Yp):
        if (smask >> v) & 1:
            continue
        Z.update(list(bits(nm[v] & t))[:2])
    W = X | Xp | Y | Yp | frozenset(Z)
    return {"X": X, "X'": Xp, "Y": Y, "Y'": Yp, "Z": frozenset(Z), "W": W}


def correct_coloring(g: VertexWeightedGraph, tree_vertices, terminals, fill_red_mask: int = 0) -> RedBlueColoring:
    """W inside T red, W outside T blue; vertices outside W follow ``fill_red_mask``."""
    t = mask_of(tree_vertices)
    w = mask_of(witness_set(g, tree_vertices, terminals)["W"])
    red = (fill_red_mask & ~w) | (w & t)
    return RedBlueColoring.from_mask(g, red)
