"""Packing chromatic number pipelines.

A packing coloring gives color ``i`` only to vertices pairwise at distance
at least ``i + 1``. Every pipeline here reduces the problem to maximum
stable sets of layered graphs and returns a certified witness coloring
alongside its lower and upper bounds.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BudgetExhaustedError,
    InvalidUpperBoundError,
    StarMembersPresentError,
    TooLargeError,
)
from .graph import (
    STAR,
    DistanceMatrix,
    Graph,
    LayeredGraph,
    all_pairs_distances,
    layered_graph,
    power_graph,
)
from .hamming import (
    HammingParams,
    offset_permutation,
    alpha_upper_bound_propagation,
    best_known_lower,
    diagonal_words,
    encode,
    generate,
    hamming_distance_matrix,
    closed_form_lower_bound,
)
from .mss import UNLIMITED, SolveBudget, SolveResult, greedy_maximal_stable_set, solve_mss

BRUTEFORCE_MAX_N = 12


@dataclass(frozen=True)
class PackingColoring:
    """``colors[v]`` is the (1-based) color of vertex ``v``."""

    colors: tuple[int, ...]
    name: str = field(default="", compare=False)

    @property
    def k(self) -> int:
        return max(self.colors, default=0)

    @property
    def n(self) -> int:
        return len(self.colors)

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors):
            out.setdefault(c, []).append(v)
        return out


def verify_packing_coloring(g: Graph, dm: DistanceMatrix, c: PackingColoring) -> bool:
    if c.n != g.n or any(col < 1 for col in c.colors):
        return False
    for color, members in c.classes().items():
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                if dm(u, v) <= color:
                    return False
    return True


@dataclass(frozen=True)
class LayeredStableSet:
    """Members ``(v, k)`` of a layered graph; ``(STAR, k)`` marks a star vertex."""

    n: int
    layers: tuple[int, ...]
    starred: bool
    members: frozenset[tuple[int, int]]

    @classmethod
    def from_ids(cls, lg: LayeredGraph, ids: Iterable[int]) -> LayeredStableSet:
        return cls(lg.n, lg.layers, lg.starred, lg.labels(ids))

    def __len__(self) -> int:
        return len(self.members)

    @property
    def star_layers(self) -> frozenset[int]:
        return frozenset(k for v, k in self.members if v == STAR)

    @property
    def columns(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.members if v != STAR)

    def layer(self, k: int) -> list[int]:
        return sorted(v for v, kk in self.members if kk == k and v != STAR)


def check_layered_stable_set(dm: DistanceMatrix, ls: LayeredStableSet) -> bool:
    """Validate against distances alone, without building the layered graph."""
    seen: set[int] = set()
    by_layer: dict[int, list[int]] = {}
    layers = set(ls.layers)
    for v, k in ls.members:
        if k not in layers:
            return False
        if v == STAR:
            if not ls.starred:
                return False
            continue
        if not 0 <= v < dm.n or v in seen:
            return False
        seen.add(v)
        by_layer.setdefault(k, []).append(v)
    for k, vs in by_layer.items():
        if k in ls.star_layers:
            return False
        sub = dm.dist[np.ix_(vs, vs)]
        if (sub[~np.eye(len(vs), dtype=bool)] <= k).any():
            return False
    return True


def drop_stars(ls: LayeredStableSet) -> tuple[LayeredStableSet, int]:
    """Remove star members and renumber the surviving layers as ``1..t``.

    Layer values only shrink, so distance constraints still hold. Returns
    the new set and ``t``.
    """
    kept = [k for k in ls.layers if k not in ls.star_layers]
    relabel = {k: i + 1 for i, k in enumerate(kept)}
    members = frozenset((v, relabel[k]) for v, k in ls.members if v != STAR)
    t = len(kept)
    return LayeredStableSet(ls.n, tuple(range(1, t + 1)), False, members), t


def coloring_from_layered_set(
    ls: LayeredStableSet, extra_base: int, name: str = ""
) -> PackingColoring:
    """Color ``v`` with ``k`` for each member ``(v, k)``; uncovered vertices get
    fresh singleton colors ``extra_base + 1, extra_base + 2, ...`` by vertex id."""
    if ls.star_layers:
        raise StarMembersPresentError(f"star members in layers {sorted(ls.star_layers)}")
    used = max((k for _, k in ls.members), default=0)
    if used > extra_base:
        raise ValueError(f"extra_base={extra_base} below used layer {used}")
    colors = [0] * ls.n
    for v, k in ls.members:
        colors[v] = k
    nxt = extra_base
    for v in range(ls.n):
        if colors[v] == 0:
            nxt += 1
            colors[v] = nxt
    return PackingColoring(tuple(colors), name)


class PcnStatus(str, enum.Enum):
    EXACT = "exact"
    BOUNDS = "bounds"


@dataclass(frozen=True)
class PcnResult:
    lower: int
    upper: int
    witness: PackingColoring
    status: PcnStatus
    lower_source: str = "solver"
    layered_set: LayeredStableSet | None = None
    solves: tuple[SolveResult, ...] = field(default=(), repr=False)

    @property
    def exact(self) -> bool:
        return self.status is PcnStatus.EXACT


def _result(lower, witness, source, ls=None, solves=()) -> PcnResult:
    upper = witness.k
    if lower > upper:
        raise AssertionError(f"lower bound {lower} exceeds certified upper bound {upper}")
    status = PcnStatus.EXACT if lower == upper else PcnStatus.BOUNDS
    return PcnResult(lower, upper, witness, status, source, ls, tuple(solves))


def _complete(g: Graph) -> PcnResult:
    witness = PackingColoring(tuple(range(1, g.n + 1)), g.name)
    return PcnResult(g.n, g.n, witness, PcnStatus.EXACT, "complete")


def _solve_layers(g, dm, layers, starred, budget, workers, initial=None, cap=None):
    lg = layered_graph(g, dm, layers, starred)
    init = None if initial is None else lg.ids(initial.members)
    res = solve_mss(lg.graph, budget, init, cap, workers=workers)
    return lg, res, LayeredStableSet.from_ids(lg, res.best.members)


def pcn_exact_iterative(
    g: Graph,
    budget: SolveBudget = UNLIMITED,
    *,
    dm: DistanceMatrix | None = None,
    workers: int = 1,
    warm_start: LayeredStableSet | None = None,
    alpha_cap: int | None = None,
) -> PcnResult:
    """Solve ``G^[d-1]``; if it has a stable set of size ``n``, descend ``k``
    until the layered graph ``G^[k]`` no longer does."""
    dm = all_pairs_distances(g) if dm is None else dm
    n, d = g.n, dm.diameter
    if d <= 1:
        return _complete(g)
    _, res, ls = _solve_layers(g, dm, range(1, d), False, budget, workers, warm_start, alpha_cap)
    solves = [res]
    if res.upper < n:
        witness = coloring_from_layered_set(ls, d - 1, g.name)
        return _result(d - 1 + n - res.upper, witness, "solver", ls, solves)
    if res.lower < n:
        # undecided regime: only the witness and the trivial bound are certain
        witness = coloring_from_layered_set(ls, d - 1, g.name)
        return _result(2, witness, "trivial", ls, solves)

    full = ls
    for k in range(d - 2, 0, -1):
        _, rk, lsk = _solve_layers(g, dm, range(1, k + 1), False, budget, workers, cap=n)
        solves.append(rk)
        if rk.lower == n:
            full = lsk
            continue
        witness = coloring_from_layered_set(full, k + 1, g.name)
        if rk.upper < n:
            return _result(k + 1, witness, "solver", full, solves)
        return _result(2, witness, "trivial", full, solves)
    raise AssertionError("a connected graph on n >= 2 vertices has no stable set of size n")


def _starred_result(g, n, shift, res, ls, source_name) -> PcnResult:
    plain, t = drop_stars(ls)
    witness = coloring_from_layered_set(plain, t, g.name)
    return _result(shift + n - res.upper, witness, source_name, ls, [res])


def pcn_exact_starred(
    g: Graph,
    budget: SolveBudget = UNLIMITED,
    *,
    dm: DistanceMatrix | None = None,
    workers: int = 1,
) -> PcnResult:
    """One stable-set solve on the starred graph ``G_*^[d-1]``; the value is
    ``(d - 1) + n - alpha``."""
    dm = all_pairs_distances(g) if dm is None else dm
    n, d = g.n, dm.diameter
    if d <= 1:
        return _complete(g)
    _, res, ls = _solve_layers(g, dm, range(1, d), True, budget, workers)
    return _starred_result(g, n, d - 1, res, ls, "solver")


def pcn_exact_starred_capped(
    g: Graph,
    witness: PackingColoring,
    budget: SolveBudget = UNLIMITED,
    *,
    t: int | None = None,
    dm: DistanceMatrix | None = None,
    workers: int = 1,
) -> PcnResult:
    """Use a verified coloring with ``t`` colors to solve the smaller ``G_*^[t]``;
    the value is ``n + t - alpha``."""
    dm = all_pairs_distances(g) if dm is None else dm
    t = witness.k if t is None else t
    if not verify_packing_coloring(g, dm, witness):
        raise InvalidUpperBoundError("supplied witness is not a packing coloring of the graph")
    if witness.k > t:
        raise InvalidUpperBoundError(f"witness uses {witness.k} colors, more than t={t}")
    n = g.n
    if not 1 <= t <= n:
        raise InvalidUpperBoundError(f"t={t} outside [1, {n}]")
    _, res, ls = _solve_layers(g, dm, range(1, t + 1), True, budget, workers)
    result = _starred_result(g, n, t, res, ls, "solver")
    if witness.k < result.upper:
        result = _result(result.lower, PackingColoring(witness.colors, g.name), "solver", ls, result.solves)
    return result


def starred_alpha_by_layers(
    g: Graph, p: int, budget: SolveBudget = UNLIMITED, *, dm: DistanceMatrix | None = None
) -> int:
    """``max(alpha(G^[t]) + p - t)`` over ``0 <= t <= p``; a test oracle for the
    stability number of ``G_*^[p]``."""
    dm = all_pairs_distances(g) if dm is None else dm
    best = p  # t = 0: every layer takes its star
    for t in range(1, p + 1):
        res = solve_mss(layered_graph(g, dm, range(1, t + 1)).graph, budget)
        if not res.optimal:
            raise BudgetExhaustedError(f"alpha(G^[{t}]) not proven within budget")
        best = max(best, res.lower + p - t)
    return best


# -- Hamming graphs ---------------------------------------------------------


def hamming_heuristic(
    p: HammingParams, budget: SolveBudget = UNLIMITED, *, warm_start: bool = True
) -> PcnResult:
    """Greedy-plus-solver layered stable set of ``H(q,m)^[m-1]``.

    Layer 1 is the zero-sum code; each further layer ``k`` takes a greedy
    maximal stable set of ``H^k`` on the columns still free, improved by a
    budgeted exact solve (``budget / (m - 1)`` per layer). For ``m = 3`` the
    ``(i, i, a_i)`` words seed layer 2.
    """
    q, m, n = p.q, p.m, p.n
    g = generate(p)
    if m == 1:
        return _complete(g)
    dm = hamming_distance_matrix(p)
    layer1 = diagonal_words(p)
    members = [(v, 1) for v in layer1]
    used = set(layer1)
    seeds: dict[int, list[int]] = {}
    if warm_start and m == 3 and q >= 3:
        a = offset_permutation(q)
        seeds[2] = [encode((i, i, a[i]), q) for i in range(q)]
    share = budget.split(m - 1)
    solves = []
    for k in range(2, m):
        gk = power_graph(g, dm, k)
        init = greedy_maximal_stable_set(gk, used).members
        seed = seeds.get(k)
        if seed and len(seed) > len(init) and not used.intersection(seed) and gk.is_stable(seed):
            init = frozenset(seed)
        res = solve_mss(gk, share, init, frozen=used)
        solves.append(res)
        members.extend((v, k) for v in res.best.members)
        used.update(res.best.members)
    ls = LayeredStableSet(n, tuple(range(1, m)), False, frozenset(members))
    if not check_layered_stable_set(dm, ls):
        raise AssertionError("heuristic produced an invalid layered stable set")
    witness = coloring_from_layered_set(ls, m - 1, g.name)
    return _result(closed_form_lower_bound(p), witness, "closed-form", ls, solves)


def hamming_bounds_pipeline(
    p: HammingParams,
    budget: SolveBudget = UNLIMITED,
    *,
    prev_lower: int | None = None,
    workers: int = 1,
) -> PcnResult:
    """Heuristic warm start, then an exact solve of ``H(q,m)^[m-1]`` capped by
    the bound propagated from ``H(q,m-1)``."""
    heur = hamming_heuristic(p, budget)
    q, m, n = p.q, p.m, p.n
    if m == 1 or heur.exact:
        return heur
    prev = best_known_lower(q, m - 1) if prev_lower is None else prev_lower
    cap = min(alpha_upper_bound_propagation(p, prev), n)
    g = generate(p)
    dm = hamming_distance_matrix(p)
    _, res, ls = _solve_layers(g, dm, range(1, m), False, budget, workers, heur.layered_set, cap)
    witness = coloring_from_layered_set(ls, m - 1, g.name)
    if heur.upper < witness.k:
        witness, ls = heur.witness, heur.layered_set
    candidates = {
        "closed-form": closed_form_lower_bound(p),
        "product": q * prev - (q - 1) * (m - 1),
        "solver": m - 1 + n - res.upper,
    }
    source = max(candidates, key=lambda s: (candidates[s], s == "solver"))
    return _result(candidates[source], witness, source, ls, heur.solves + (res,))


# -- exhaustive oracle ------------------------------------------------------


def pcn_bruteforce(g: Graph, dm: DistanceMatrix | None = None) -> int:
    return bruteforce_coloring(g, dm).k


def bruteforce_coloring(g: Graph, dm: DistanceMatrix | None = None) -> PackingColoring:
    """Optimal packing coloring by exhaustive search (``n <= 12``).

    Vertices are colored in id order, lowest feasible color first; a branch
    dies once it needs as many colors as the best coloring found so far.
    """
    n = g.n
    if n > BRUTEFORCE_MAX_N:
        raise TooLargeError(f"exhaustive search capped at n={BRUTEFORCE_MAX_N}, got {n}")
    dm = all_pairs_distances(g) if dm is None else dm
    dist = dm.dist.tolist()
    best = list(range(1, n + 1))
    best_k = n
    colors = [0] * n

    def place(v: int, used: int) -> None:
        nonlocal best, best_k
        if used >= best_k:
            return
        if v == n:
            best, best_k = colors.copy(), used
            return
        row = dist[v]
        for c in range(1, n + 1):
            if c >= best_k:
                break
            if all(colors[u] != c or row[u] > c for u in range(v)):
                colors[v] = c
                place(v + 1, max(used, c))
        colors[v] = 0

    place(0, 0)
    return PackingColoring(tuple(best), g.name)
