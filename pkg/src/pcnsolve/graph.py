"""Graph core: simple undirected graphs, distances, power and layered graphs.

Vertices are ``0..n-1`` internally. Adjacency is stored as one Python-int
bitset per vertex, which is what the stable-set kernels consume directly.
"""

from __future__ import annotations

import random
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from ._bits import iter_bits
from .errors import DisconnectedError, EmptyLayerSetError, GraphError

#: label used for the star vertex of a layer, ``(STAR, k)``
STAR = -1


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    n: int
    rows: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if len(self.rows) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.rows)}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if rows[u] >> v & 1:
                raise GraphError(f"duplicate edge ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), name)

    @classmethod
    def from_mask(cls, mask: np.ndarray, name: str = "") -> Graph:
        """Build from a symmetric boolean adjacency matrix (diagonal ignored)."""
        mask = np.array(mask, dtype=bool)
        np.fill_diagonal(mask, False)
        return cls(mask.shape[0], rows_from_mask(mask), name)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(iter_bits(self.rows[v]))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(self.neighbors(v) for v in range(self.n))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edge_list())

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        out = []
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def is_stable(self, vertices: Iterable[int]) -> bool:
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return all(self.rows[v] & mask == 0 for v in iter_bits(mask))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={self.num_edges}>"


def rows_from_mask(mask: np.ndarray) -> tuple[int, ...]:
    packed = np.packbits(mask, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop distances of a connected graph."""

    dist: np.ndarray
    diameter: int

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def __call__(self, u: int, v: int) -> int:
        return int(self.dist[u, v])

    def within(self, k: int) -> np.ndarray:
        """Boolean matrix of pairs at distance ``1..k``."""
        return (self.dist <= k) & (self.dist > 0)


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """BFS distances from every vertex; raises on a disconnected graph."""
    if g.n == 0:
        raise GraphError("empty graph")
    edges = g.edge_list()
    if edges:
        src, dst = np.array(edges).T
    else:
        src = dst = np.zeros(0, dtype=np.int64)
    adj = csr_matrix((np.ones(len(src)), (src, dst)), shape=(g.n, g.n))
    raw = shortest_path(adj, method="D", directed=False, unweighted=True)
    if not np.isfinite(raw).all():
        raise DisconnectedError(f"graph {g.name or '<unnamed>'} is disconnected")
    dist = raw.astype(np.int32)
    dist.setflags(write=False)
    return DistanceMatrix(dist, int(dist.max()))


def power_graph(g: Graph, dm: DistanceMatrix, k: int) -> Graph:
    """``G^k``: join every pair at distance at most ``k``."""
    if k < 1:
        raise ValueError(f"power k must be >= 1, got {k}")
    if k == 1:
        return g
    return Graph(g.n, rows_from_mask(dm.within(k)), f"{g.name}^{k}" if g.name else "")


@dataclass(frozen=True)
class LayeredGraph:
    """Materialized ``G^F`` (or ``G_*^F`` when ``starred``).

    Vertex ``(v, k)`` has id ``rank(k) * n + v``; star vertices ``(STAR, k)``
    follow all layer blocks, in layer order.
    """

    base: Graph
    layers: tuple[int, ...]
    starred: bool
    graph: Graph

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def num_vertices(self) -> int:
        return self.graph.n

    def rank(self, k: int) -> int:
        return self.layers.index(k)

    def vertex_id(self, v: int, k: int) -> int:
        r = self.rank(k)
        if v == STAR:
            if not self.starred:
                raise KeyError("graph has no star vertices")
            return len(self.layers) * self.n + r
        return r * self.n + v

    def label(self, i: int) -> tuple[int, int]:
        n, nl = self.n, len(self.layers)
        if i < n * nl:
            return i % n, self.layers[i // n]
        return STAR, self.layers[i - n * nl]

    def labels(self, ids: Iterable[int]) -> frozenset[tuple[int, int]]:
        return frozenset(self.label(i) for i in ids)

    def ids(self, pairs: Iterable[tuple[int, int]]) -> frozenset[int]:
        return frozenset(self.vertex_id(v, k) for v, k in pairs)

    def layer_mask(self, k: int) -> int:
        return ((1 << self.n) - 1) << (self.rank(k) * self.n)


def layered_graph(
    g: Graph, dm: DistanceMatrix, f: Iterable[int], starred: bool = False
) -> LayeredGraph:
    layers = tuple(sorted(set(f)))
    if not layers:
        raise EmptyLayerSetError("layer set F must be nonempty")
    n = g.n
    if layers[0] < 1 or layers[-1] > n:
        raise ValueError(f"layers must lie in [1, {n}], got {layers}")
    nl = len(layers)
    column = [sum(1 << (r * n + v) for r in range(nl)) for v in range(n)]
    rows: list[int] = []
    for r, k in enumerate(layers):
        off = r * n
        star_bit = 1 << (nl * n + r) if starred else 0
        for v, prow in enumerate(power_graph(g, dm, k).rows):
            rows.append((prow << off) | (column[v] ^ (1 << (off + v))) | star_bit)
    if starred:
        block = (1 << n) - 1
        rows.extend(block << (r * n) for r in range(nl))
    name = f"{g.name}^{{{','.join(map(str, layers))}}}{'*' if starred else ''}"
    return LayeredGraph(g, layers, starred, Graph(len(rows), tuple(rows), name))


# -- small graph families ---------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)], f"K{n}")


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)], f"K1,{leaves}")


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner, "Petersen")


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges, f"G({n},{p})")


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Random spanning tree overlaid with ``G(n, p)`` edges."""
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.add((i, j))
    return Graph.from_edges(n, sorted(edges), f"Gc({n},{p})")
