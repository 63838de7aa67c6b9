"""Maximum stable set machinery.

Greedy maximal stable sets, clique edge covers of power graphs, and a
budgeted exact branch and bound whose bounding function is a greedy clique
partition of the remaining candidates.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import _backend
from ._bits import full_mask, iter_bits, to_mask
from .graph import DistanceMatrix, Graph, power_graph
from .errors import InvalidInitialSetError


@dataclass(frozen=True)
class StableSet:
    graph: Graph = field(repr=False)
    members: frozenset[int]
    certified: bool = False

    @classmethod
    def certify(cls, graph: Graph, members: Iterable[int]) -> StableSet:
        """Check independence and return a certified set; raises ``ValueError`` otherwise."""
        members = frozenset(members)
        if not graph.is_stable(members):
            raise ValueError("vertex set is not stable")
        return cls(graph, members, True)

    @property
    def mask(self) -> int:
        return to_mask(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)


@dataclass(frozen=True)
class CliqueCover:
    graph: Graph = field(repr=False)
    k: int
    cliques: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.cliques)


@dataclass(frozen=True)
class SolveBudget:
    """Search limits; ``None`` means unlimited.

    Node limits are deterministic. Wall-clock limits are not, so results
    obtained under a time limit may differ from run to run.
    """

    time_limit: float | None = None
    node_limit: int | None = None

    def __post_init__(self) -> None:
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError(f"time_limit must be positive, got {self.time_limit}")
        if self.node_limit is not None and self.node_limit <= 0:
            raise ValueError(f"node_limit must be positive, got {self.node_limit}")

    def split(self, parts: int) -> SolveBudget:
        return SolveBudget(
            None if self.time_limit is None else self.time_limit / parts,
            None if self.node_limit is None else max(1, self.node_limit // parts),
        )


UNLIMITED = SolveBudget()


class SolveStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class SolveResult:
    best: StableSet
    lower: int
    upper: int
    status: SolveStatus
    nodes: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is SolveStatus.OPTIMAL


def greedy_maximal_stable_set(g: Graph, frozen: Iterable[int] = ()) -> StableSet:
    """Maximal stable set of ``g`` minus ``frozen`` by minimum residual degree."""
    allowed = full_mask(g.n) & ~to_mask(frozen)
    k = _backend.kernel
    chosen = k.greedy_mis(k.pack(g.rows, g.n), g.n, allowed)
    return StableSet(g, frozenset(iter_bits(chosen)), True)


# -- clique covers ----------------------------------------------------------


def _closed_neighborhoods(g: Graph) -> list[frozenset[int]]:
    return [frozenset(iter_bits(row | 1 << v)) for v, row in enumerate(g.rows)]


def _greedy_completion(gk: Graph, base: list[frozenset[int]]) -> list[frozenset[int]]:
    """Maximal cliques of ``gk`` for the edges ``base`` leaves uncovered.

    Edges are scanned in ``(min, max)`` order; each still-uncovered edge is
    grown into a maximal clique, adding the smallest compatible vertex first.
    """
    covered = [0] * gk.n
    for clique in base:
        cmask = to_mask(clique)
        for x in clique:
            covered[x] |= cmask
    extra = []
    for u, v in gk.edge_list():
        if covered[u] >> v & 1:
            continue
        cmask = (1 << u) | (1 << v)
        common = gk.rows[u] & gk.rows[v]
        while common:
            low = common & -common
            cmask |= low
            common &= gk.rows[low.bit_length() - 1]
        for x in iter_bits(cmask):
            covered[x] |= cmask
        extra.append(frozenset(iter_bits(cmask)))
    return extra


def clique_cover_even(g: Graph, dm: DistanceMatrix, k: int) -> CliqueCover:
    """Cover ``G^k`` by the closed neighborhoods of ``G^(k/2)``."""
    if k < 2 or k % 2:
        raise ValueError(f"k must be even and >= 2, got {k}")
    half = power_graph(g, dm, k // 2)
    return CliqueCover(power_graph(g, dm, k), k, tuple(_closed_neighborhoods(half)))


def clique_cover_odd(g: Graph, dm: DistanceMatrix, k: int) -> CliqueCover:
    """Neighborhoods of ``G^((k-1)/2)`` plus greedy maximal cliques for what remains."""
    if k < 3 or k % 2 == 0:
        raise ValueError(f"k must be odd and >= 3, got {k}")
    base = _closed_neighborhoods(power_graph(g, dm, (k - 1) // 2))
    gk = power_graph(g, dm, k)
    return CliqueCover(gk, k, tuple(base + _greedy_completion(gk, base)))


def clique_cover(g: Graph, dm: DistanceMatrix, k: int) -> CliqueCover:
    """Dispatch on parity; ``k = 1`` uses greedy maximal cliques alone."""
    if k == 1:
        return CliqueCover(g, 1, tuple(_greedy_completion(g, [])))
    if k % 2 == 0:
        return clique_cover_even(g, dm, k)
    return clique_cover_odd(g, dm, k)


def validate_cover(c: CliqueCover, g_k: Graph) -> bool:
    covered = [0] * g_k.n
    for clique in c.cliques:
        if any(not 0 <= x < g_k.n for x in clique):
            return False
        cmask = to_mask(clique)
        for x in clique:
            if cmask & ~(g_k.rows[x] | 1 << x):
                return False
            covered[x] |= cmask
    return all(row & ~covered[u] == 0 for u, row in enumerate(g_k.rows))


# -- exact solver -----------------------------------------------------------


def _root_branches(rows, n: int, cand: int, best: int) -> list[tuple[int, int]]:
    """Independent subproblems of the root node, in the kernel's visiting order."""
    k = _backend.kernel
    verts, labels = k.partition(k.pack(rows, n), cand)
    out = []
    for v, label in zip(reversed(verts), reversed(labels)):
        if label <= best.bit_count():
            break
        out.append((cand & ~(1 << v) & ~rows[v], 1 << v))
        cand &= ~(1 << v)
    return out


def _solve_frame(args):
    rows, n, cand, cur, best, cap, node_limit, time_limit = args
    k = _backend.kernel
    return k.branch_and_bound(k.pack(rows, n), n, cand, cur, best, cap, node_limit, time_limit)


def solve_mss(
    g: Graph,
    budget: SolveBudget = UNLIMITED,
    initial: StableSet | Iterable[int] | None = None,
    alpha_cap: int | None = None,
    *,
    frozen: Iterable[int] = (),
    workers: int = 1,
) -> SolveResult:
    """Maximum stable set of ``g`` avoiding ``frozen`` vertices.

    The incumbent starts from the larger of ``initial`` and a greedy set.
    ``alpha_cap`` must be a valid upper bound; search stops once it is met.
    With ``workers > 1`` the root's branches are solved as independent
    subproblems in separate processes, each with an equal share of the
    budget and no shared incumbent, so results stay deterministic.
    """
    n = g.n
    allowed = full_mask(n) & ~to_mask(frozen)
    k = _backend.kernel
    packed = k.pack(g.rows, n)

    start = 0
    if initial is not None:
        members = initial.members if isinstance(initial, StableSet) else frozenset(initial)
        start = to_mask(members)
        if start & ~allowed or any(not 0 <= v < n for v in members):
            raise InvalidInitialSetError("warm start uses frozen or unknown vertices")
        if not g.is_stable(members):
            raise InvalidInitialSetError("warm start is not a stable set")
    greedy = k.greedy_mis(packed, n, allowed)
    best = greedy if greedy.bit_count() > start.bit_count() else start

    cap = allowed.bit_count()
    if alpha_cap is not None:
        if alpha_cap < best.bit_count():
            raise ValueError(f"alpha_cap={alpha_cap} is below a known stable set of size {best.bit_count()}")
        cap = min(cap, alpha_cap)

    node_limit = -1 if budget.node_limit is None else budget.node_limit
    time_limit = 0.0 if budget.time_limit is None else budget.time_limit
    if workers <= 1:
        best, upper, nodes, exhausted = k.branch_and_bound(
            packed, n, allowed, 0, best, cap, node_limit, time_limit
        )
    else:
        frames = [] if best.bit_count() >= cap else _root_branches(g.rows, n, allowed, best)
        share = budget.split(max(1, len(frames)))
        jobs = [
            (g.rows, n, c, cur, best, cap,
             -1 if share.node_limit is None else share.node_limit,
             0.0 if share.time_limit is None else share.time_limit)
            for c, cur in frames
        ]
        upper, nodes, exhausted = best.bit_count(), 0, False
        if jobs:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(_solve_frame, jobs))
            for f_best, f_upper, f_nodes, f_exhausted in outcomes:
                if f_best.bit_count() > best.bit_count():
                    best = f_best
                upper = max(upper, f_upper)
                nodes += f_nodes
                exhausted |= f_exhausted
        upper = max(min(upper, cap), best.bit_count())
        if not exhausted:
            upper = best.bit_count()

    size = best.bit_count()
    status = SolveStatus.BUDGET_EXHAUSTED if exhausted and upper > size else SolveStatus.OPTIMAL
    return SolveResult(StableSet(g, frozenset(iter_bits(best)), True), size, upper, status, nodes)


def alpha_bruteforce(g: Graph) -> int:
    """Stability number by enumerating every vertex subset; test oracle, n <= ~20."""
    n, rows = g.n, g.rows
    stable = bytearray(1 << n)
    stable[0] = 1
    best = 0
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        if stable[rest] and rows[low.bit_length() - 1] & rest == 0:
            stable[mask] = 1
            best = max(best, mask.bit_count())
    return best
