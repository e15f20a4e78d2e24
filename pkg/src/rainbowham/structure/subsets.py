"""
Subset Edge Tables
==================

``internal_edge_table(rows)`` returns a numpy array T with T[S] = e(G[S])
for every vertex subset S (as a bitmask). With it, e(X, Y) under the
"edges inside X ∩ Y counted once" convention is

    e(X, Y) = T[X ∪ Y] - T[X \\ Y] - T[Y \\ X]

for scalars or whole arrays of masks at once. Tables are built with one
vectorized doubling step per vertex.
"""

from functools import lru_cache
from itertools import combinations
from typing import Sequence, Tuple, Union

import numpy as np

from ..core.collection import bits
from ..core.exceptions import SizeCapExceededError
from .constants import SUBSET_TABLE_MAX_N

MaskArray = np.ndarray


def _popcount_table(n: int) -> np.ndarray:
    counts = np.zeros(1 << n, dtype=np.int8)
    for v in range(n):
        half = 1 << v
        counts[half : 2 * half] = counts[:half] + 1
    return counts


@lru_cache(maxsize=8)
def popcounts(n: int) -> np.ndarray:
    return _popcount_table(n)


def masks_of_size(n: int, k: int) -> np.ndarray:
    """All k-subsets of {0..n-1} as an int64 array of masks, increasing"""
    if n <= SUBSET_TABLE_MAX_N:
        return np.flatnonzero(popcounts(n) == k).astype(np.int64)
    return np.array([sum(1 << v for v in combo) for combo in combinations(range(n), k)], dtype=np.int64)


@lru_cache(maxsize=16)
def _table_for(rows: Tuple[int, ...]) -> np.ndarray:
    n = len(rows)
    table = np.zeros(1 << n, dtype=np.int32)
    for v in range(n):
        half = 1 << v
        lower = np.arange(half, dtype=np.int64)
        gain = np.zeros(half, dtype=np.int32)
        for u in bits(rows[v] & (half - 1)):
            gain += ((lower >> u) & 1).astype(np.int32)
        table[half : 2 * half] = table[:half] + gain
    table.setflags(write=False)
    return table


def internal_edge_table(rows: Sequence[int]) -> np.ndarray:
    """
    T[S] = number of edges with both ends in S, for every mask S.

    Raises:
        SizeCapExceededError: above ``SUBSET_TABLE_MAX_N`` vertices
    """
    n = len(rows)
    if n > SUBSET_TABLE_MAX_N:
        raise SizeCapExceededError(n, SUBSET_TABLE_MAX_N, "internal_edge_table")
    return _table_for(tuple(rows))


def summed_table(rows_per_color: Sequence[Sequence[int]]) -> np.ndarray:
    """Σ_c T_c: internal edge counts summed over the given colors"""
    total = None
    for rows in rows_per_color:
        table = internal_edge_table(rows).astype(np.int64)
        total = table if total is None else total + table
    assert total is not None
    return total


def between(
    table: np.ndarray, x: Union[int, MaskArray], y: Union[int, MaskArray]
) -> Union[int, MaskArray]:
    """e(X, Y) from an internal-edge table; either argument may be an array"""
    return table[x | y] - table[x & ~y] - table[y & ~x]


@lru_cache(maxsize=64)
def _adjacency_for(rows: Tuple[int, ...]) -> np.ndarray:
    n = len(rows)
    matrix = np.array([[(row >> v) & 1 for v in range(n)] for row in rows], dtype=np.int64).reshape(n, n)
    matrix.setflags(write=False)
    return matrix


def adjacency_array(rows: Sequence[int]) -> np.ndarray:
    """0/1 adjacency matrix of one graph, as int64"""
    return _adjacency_for(tuple(rows))


def indicator(mask: int, n: int) -> np.ndarray:
    """0/1 int64 vector of the vertices in ``mask``"""
    return np.array([(mask >> v) & 1 for v in range(n)], dtype=np.int64)


def mask_from_indicator(vector: np.ndarray) -> int:
    return sum(1 << int(v) for v in np.flatnonzero(vector))


def pair_count(adjacency: np.ndarray, x: np.ndarray, y: np.ndarray) -> int:
    """e(X, Y) with edges inside X ∩ Y counted once: x.Ay - z.Az / 2 for z = x AND y"""
    z = x & y
    return int(x @ adjacency @ y - (z @ adjacency @ z) // 2)


class SubsetEdgeCounter:
    """
    e(S) and e(X, Y) queries on one graph: table lookups up to the table
    cap, popcount sums above it.
    """

    def __init__(self, rows: Sequence[int]):
        self.rows = tuple(rows)
        self.n = len(self.rows)
        self.table = internal_edge_table(self.rows) if self.n <= SUBSET_TABLE_MAX_N else None

    def internal(self, mask: int) -> int:
        if self.table is not None:
            return int(self.table[mask])
        return sum((self.rows[v] & mask).bit_count() for v in bits(mask)) // 2

    def between(self, x: int, y: int) -> int:
        return self.internal(x | y) - self.internal(x & ~y) - self.internal(y & ~x)

    def degree_into(self, v: int, mask: int) -> int:
        return (self.rows[v] & mask).bit_count()


__all__ = [
    "popcounts",
    "masks_of_size",
    "internal_edge_table",
    "summed_table",
    "between",
    "SubsetEdgeCounter",
    "adjacency_array",
    "indicator",
    "mask_from_indicator",
    "pair_count",
]
