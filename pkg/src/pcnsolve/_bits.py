"""Helpers for Python ints used as vertex bitsets."""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def full_mask(n: int) -> int:
    return (1 << n) - 1
