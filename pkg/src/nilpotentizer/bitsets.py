"""Bitmask set algebra over element indices.

Element subsets are plain Python ints used as bit vectors: bit i set means
element i is a member. All set operations reduce to integer bit arithmetic,
which keeps subset/equality tests O(order / machine word).
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np


def bits_from_indices(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        bits |= 1 << i
    return bits


def bits_from_bool_array(mask: np.ndarray) -> int:
    """Pack a boolean numpy array into an int bitmask."""
    packed = np.packbits(mask.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def bits_from_bytearray(flags: bytearray) -> int:
    return bits_from_bool_array(np.frombuffer(bytes(flags), dtype=np.uint8))


def bits_to_indices(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def bits_to_array(bits: int, n: int) -> np.ndarray:
    """Member indices as a sorted int64 numpy array."""
    raw = bits.to_bytes((n + 7) // 8, "little")
    mask = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n]
    return np.nonzero(mask)[0].astype(np.int64)


def bits_to_bool_array(bits: int, n: int) -> np.ndarray:
    raw = bits.to_bytes((n + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].astype(bool)


def popcount(bits: int) -> int:
    return bits.bit_count()


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def full_mask(n: int) -> int:
    return (1 << n) - 1
