"""Vertex sets as integer bitmasks.

Every vertex subset in this package is a plain ``int`` whose bit i stands
for vertex i of a fixed universe of size n.  Python's arbitrary-precision
ints give word-parallel and/or/xor for free, which is what makes the
dynamic programming over bags and separators tolerable in pure Python.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def bit(i: int) -> int:
    return 1 << i


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def full_mask(n: int) -> int:
    return (1 << n) - 1


def iter_bits(m: int) -> Iterator[int]:
    """Yield the set bit positions of m in ascending order."""
    while m:
        b = m & -m
        yield b.bit_length() - 1
        m ^= b


def lowest_bit(m: int) -> int:
    """Index of the least significant set bit (m must be nonzero)."""
    return (m & -m).bit_length() - 1


def to_sorted_list(m: int) -> list[int]:
    return list(iter_bits(m))
