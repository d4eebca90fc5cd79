"""Fixed-width bitsets encoded as Python integers.

Bit ``i`` of a mask stands for the ``i``-th element of a carrier list.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence

import numpy as np


def full(n: int) -> int:
    return (1 << n) - 1


def from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def indices(mask: int) -> list[int]:
    return list(iter_bits(mask))


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def from_bools(row: Sequence[bool] | np.ndarray) -> int:
    mask = 0
    for i, v in enumerate(row):
        if v:
            mask |= 1 << i
    return mask


def to_bools(mask: int, n: int) -> np.ndarray:
    return np.array([(mask >> i) & 1 for i in range(n)], dtype=bool)


def row_masks(matrix: np.ndarray) -> tuple[int, ...]:
    return tuple(from_bools(r) for r in matrix)


def col_masks(matrix: np.ndarray) -> tuple[int, ...]:
    return tuple(from_bools(c) for c in matrix.T)


def all_subsets(n: int) -> range:
    return range(1 << n)
