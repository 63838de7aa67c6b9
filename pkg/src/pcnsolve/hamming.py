"""Hamming graphs ``H(q, m)``: generator, distances, explicit stable sets and bounds.

Words are ranked base ``q`` with the first coordinate most significant, so
``(0, 1, 2)`` over ``q = 3`` has rank 5.
"""

from __future__ import annotations

import os
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceededError, NoClosedFormError, QTooSmallError
from .graph import DistanceMatrix, Graph
from .mss import StableSet

DEFAULT_VERTEX_BUDGET = 10_000
BUDGET_ENV = "PCNSOLVE_VERTEX_BUDGET"


def default_vertex_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_VERTEX_BUDGET


@dataclass(frozen=True)
class HammingParams:
    q: int
    m: int
    vertex_budget: int = field(default_factory=default_vertex_budget, compare=False)

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.q**self.m > self.vertex_budget:
            raise BudgetExceededError(
                f"H({self.q},{self.m}) has {self.q ** self.m} vertices, budget is {self.vertex_budget}"
            )

    @property
    def n(self) -> int:
        return self.q**self.m

    @property
    def name(self) -> str:
        return f"H({self.q},{self.m})"


def encode(word: Sequence[int], q: int) -> int:
    rank = 0
    for x in word:
        if not 0 <= x < q:
            raise ValueError(f"symbol {x} outside alphabet of size {q}")
        rank = rank * q + x
    return rank


def decode(rank: int, q: int, m: int) -> tuple[int, ...]:
    if not 0 <= rank < q**m:
        raise ValueError(f"rank {rank} outside [0, {q ** m})")
    out = []
    for _ in range(m):
        rank, x = divmod(rank, q)
        out.append(x)
    return tuple(reversed(out))


def _digits(p: HammingParams) -> np.ndarray:
    ranks = np.arange(p.n)
    weights = p.q ** np.arange(p.m - 1, -1, -1)
    return (ranks[:, None] // weights[None, :]) % p.q


def generate(p: HammingParams) -> Graph:
    """Words adjacent iff they differ in exactly one coordinate."""
    q, m = p.q, p.m
    rows = []
    for r in range(p.n):
        word = decode(r, q, m)
        row = 0
        for c, x in enumerate(word):
            w = q ** (m - 1 - c)
            base = r - x * w
            for y in range(q):
                if y != x:
                    row |= 1 << (base + y * w)
        rows.append(row)
    return Graph(p.n, tuple(rows), p.name)


def hamming_distance_matrix(p: HammingParams) -> DistanceMatrix:
    """Distance = number of differing coordinates."""
    d = _digits(p)
    dist = np.zeros((p.n, p.n), dtype=np.int32)
    for c in range(p.m):
        dist += d[:, c][:, None] != d[:, c][None, :]
    dist.setflags(write=False)
    return DistanceMatrix(dist, p.m)


def diagonal_words(p: HammingParams) -> list[int]:
    """Ranks of words whose coordinate sum is 0 mod q."""
    sums = _digits(p).sum(axis=1) % p.q
    return [int(r) for r in np.flatnonzero(sums == 0)]


def diagonal_stable_set(p: HammingParams, graph: Graph | None = None) -> StableSet:
    g = generate(p) if graph is None else graph
    return StableSet.certify(g, diagonal_words(p))


def offset_permutation(q: int) -> tuple[int, ...]:
    """Permutation ``a`` of ``0..q-1`` with ``2i + a[i]`` never divisible by ``q``.

    Both properties are checked before returning.
    """
    if q < 3:
        raise QTooSmallError(f"need q >= 3, got {q}")
    half = q // 2
    a = [q - 2 * (i + 1) for i in range(half)]
    for i in range(half, q):
        a.append(2 * q - 2 * (i + 1) + (q % 2 == 0))
    if sorted(a) != list(range(q)):
        raise AssertionError(f"a({q}) = {a} is not a permutation")
    bad = [i for i in range(q) if (2 * i + a[i]) % q == 0]
    if bad:
        raise AssertionError(f"a({q}) violates 2i + a_i != 0 (mod q) at i={bad}")
    return tuple(a)


def two_layer_stable_set(q: int):
    """Stable set of ``H(q,3)^[2]`` of size ``q^2 + q``.

    Layer 1 holds the zero-sum words, layer 2 the words ``(i, i, a_i)``.
    """
    from .pcn import LayeredStableSet

    p = HammingParams(q, 3, vertex_budget=max(q**3, 1))
    a = offset_permutation(q)
    layer1 = [(v, 1) for v in diagonal_words(p)]
    layer2 = [(encode((i, i, a[i]), q), 2) for i in range(q)]
    return LayeredStableSet(p.n, (1, 2), False, frozenset(layer1 + layer2))


def closed_form_lower_bound(p: HammingParams) -> int:
    """Closed-form lower bound ``m - 1 + q^m - (q + q^2 + ... + q^(m-1))``."""
    q, m = p.q, p.m
    return m - 1 + q**m - sum(q**k for k in range(1, m))


def exact_closed_form(p: HammingParams) -> int:
    """Exact packing chromatic number for ``m = 2`` (any q) and ``m = 3`` (q >= 3)."""
    q, m = p.q, p.m
    if m == 2:
        return 1 + q * q - q
    if m == 3 and q >= 3:
        return 2 + q**3 - q * q - q
    raise NoClosedFormError(f"no closed form for (q={q}, m={m})")


def alpha_upper_bound_propagation(p: HammingParams, pcn_lower_prev: int) -> int:
    """Bound on the stability number of ``H(q,m)^[m-1]`` from a lower bound for ``H(q,m-1)``."""
    q, m = p.q, p.m
    if m < 2:
        raise ValueError("propagation needs m >= 2")
    return m - 1 + q**m - (q * pcn_lower_prev - (q - 1) * (m - 1))


def best_known_lower(q: int, m: int) -> int:
    """Closed-form lower bound for ``H(q,m)``, exact where a formula is known."""
    p = HammingParams(q, m, vertex_budget=q**m)
    try:
        return exact_closed_form(p)
    except NoClosedFormError:
        return closed_form_lower_bound(p)
