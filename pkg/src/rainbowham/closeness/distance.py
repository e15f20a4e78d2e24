"""
Edit Distance to the Extremal Families
======================================

Labeled edit distance (number of single color-edge toggles) from a
collection to the nearest member of:

- the H family: one equitable bipartition (A, B) shared by all colors,
  each color exactly EC1 (cliques on A and B) or exactly EC2 (complete
  bipartite between A and B); optionally with an odd number of EC2 colors
- the half-split family: one A of size floor(n/2)+1, independent in every
  color and completely joined to V \\ A; edges inside V \\ A are free

Given the partition, the best pattern per color is closed form, so only
partitions are searched: exhaustively over numpy subset tables up to a
size cap, otherwise by seeded swap descent (inexact).
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.collection import GraphCollection, bits, full_mask, set_of
from ..core.exceptions import InvalidInputError, SizeCapExceededError
from ..core.structured_logger import get_logger
from ..core.types import AnalysisMode, Pattern
from ..structure.constants import SUBSET_TABLE_MAX_N
from ..structure.subsets import SubsetEdgeCounter, internal_edge_table, masks_of_size

logger = get_logger("closeness.distance")

DISTANCE_EXHAUSTIVE_MAX_N = 12
DISTANCE_LOCAL_RESTARTS = 100


@dataclass(frozen=True)
class DistanceReport:
    """Toggle count to the nearest family member found, and that member"""

    cost: int
    n: int
    target: Dict[str, Any] = field(default_factory=dict)
    exact: bool = False
    mode: AnalysisMode = AnalysisMode.EXHAUSTIVE

    @property
    def normalized(self) -> Fraction:
        """cost / n^3"""
        return Fraction(self.cost, self.n**3)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cost": self.cost,
            "normalized": str(self.normalized),
            "target": dict(self.target),
            "exact": self.exact,
            "mode": self.mode.value,
        }


def _resolve(mode: AnalysisMode, n: int, cap: int, operation: str) -> AnalysisMode:
    mode = AnalysisMode(mode)
    if mode == AnalysisMode.AUTO:
        return AnalysisMode.EXHAUSTIVE if n <= cap else AnalysisMode.LOCAL_SEARCH
    if mode == AnalysisMode.HEURISTIC:
        return AnalysisMode.LOCAL_SEARCH
    if mode == AnalysisMode.EXHAUSTIVE and n > min(cap, SUBSET_TABLE_MAX_N):
        raise SizeCapExceededError(n, cap, operation)
    return mode


class _PartitionCounts:
    """Per-color internal edge counts of a part and its complement"""

    def __init__(self, g: GraphCollection):
        self.g = g
        self.everything = full_mask(g.n)
        self.counters = [SubsetEdgeCounter(rows) for rows in g.rows]
        self.totals = [g.edge_total(c) for c in range(g.colors)]

    def split(self, c: int, a: int) -> Tuple[int, int, int]:
        counter = self.counters[c]
        inside_a = counter.internal(a)
        inside_b = counter.internal(self.everything & ~a)
        return inside_a, inside_b, self.totals[c] - inside_a - inside_b


def _swap_descent(evaluate, mask: int, everything: int) -> Tuple[int, int]:
    """Best-improvement vertex swaps between the part and its complement"""
    best = evaluate(mask)
    while best > 0:
        move = None
        for out in bits(mask):
            for into in bits(everything & ~mask):
                candidate = (mask & ~(1 << out)) | (1 << into)
                value = evaluate(candidate)
                if value < best:
                    best, move = value, candidate
        if move is None:
            break
        mask = move
    return mask, best


def _random_part(rng: random.Random, n: int, size: int) -> int:
    return sum(1 << v for v in rng.sample(range(n), size))


# =============================================================================
# H FAMILY
# =============================================================================


def _pattern_costs(a_size: int, b_size: int, inside_a, inside_b, across):
    ec1 = (comb(a_size, 2) - inside_a) + (comb(b_size, 2) - inside_b) + across
    ec2 = inside_a + inside_b + (a_size * b_size - across)
    return ec1, ec2


def _choose_patterns(ec1: List[int], ec2: List[int], require_b_odd: bool) -> Tuple[int, List[Pattern]]:
    patterns = [Pattern.EC2 if y < x else Pattern.EC1 for x, y in zip(ec1, ec2)]
    cost = sum(min(x, y) for x, y in zip(ec1, ec2))
    if require_b_odd and sum(p == Pattern.EC2 for p in patterns) % 2 == 0:
        flip = min(range(len(ec1)), key=lambda c: (abs(ec1[c] - ec2[c]), c))
        cost += abs(ec1[flip] - ec2[flip])
        patterns[flip] = Pattern.EC1 if patterns[flip] == Pattern.EC2 else Pattern.EC2
    return cost, patterns


def _h_target(n: int, mask: int, patterns: List[Pattern]) -> Dict[str, Any]:
    b = sum(p == Pattern.EC2 for p in patterns)
    return {
        "family": "H",
        "A": sorted(set_of(mask)),
        "a": len(patterns) - b,
        "b": b,
        "patterns": [p.value for p in patterns],
    }


def _h_exhaustive(g: GraphCollection, require_b_odd: bool) -> Tuple[int, int]:
    n = g.n
    everything = full_mask(n)
    size = (n + 1) // 2
    masks = masks_of_size(n, size)
    if n % 2 == 0:
        masks = masks[(masks & 1) == 1]
    complements = everything & ~masks
    ec1_rows, ec2_rows = [], []
    for c in range(g.colors):
        table = internal_edge_table(g.rows[c]).astype(np.int64)
        inside_a = table[masks]
        inside_b = table[complements]
        across = g.edge_total(c) - inside_a - inside_b
        ec1, ec2 = _pattern_costs(size, n - size, inside_a, inside_b, across)
        ec1_rows.append(ec1)
        ec2_rows.append(ec2)
    ec1_all, ec2_all = np.stack(ec1_rows), np.stack(ec2_rows)
    totals = np.minimum(ec1_all, ec2_all).sum(axis=0)
    if require_b_odd:
        even = (ec2_all < ec1_all).sum(axis=0) % 2 == 0
        totals = totals + np.where(even, np.abs(ec1_all - ec2_all).min(axis=0), 0)
    best = int(np.argmin(totals))
    return int(masks[best]), int(totals[best])


def distance_to_H_family(
    g: GraphCollection,
    require_b_odd: bool = False,
    mode: AnalysisMode = AnalysisMode.AUTO,
    seed: int = 0,
    restarts: int = DISTANCE_LOCAL_RESTARTS,
    exhaustive_max_n: int = DISTANCE_EXHAUSTIVE_MAX_N,
) -> DistanceReport:
    """
    Toggles needed to turn ``g`` into some H_a^b on an equitable partition.

    Part A has ceil(n/2) vertices. With ``require_b_odd`` the number of
    EC2 colors must be odd.

    Raises:
        InvalidInputError: if the color count differs from n
        SizeCapExceededError: exhaustive mode above the size cap
    """
    if g.colors != g.n:
        raise InvalidInputError(f"the H family has n = {g.n} colors, got {g.colors}")
    resolved = _resolve(mode, g.n, exhaustive_max_n, "distance_to_H_family")
    n = g.n
    size = (n + 1) // 2
    counts = _PartitionCounts(g)

    def evaluate(mask: int) -> Tuple[int, List[Pattern]]:
        ec1, ec2 = [], []
        for c in range(g.colors):
            x, y = _pattern_costs(size, n - size, *counts.split(c, mask))
            ec1.append(x)
            ec2.append(y)
        return _choose_patterns(ec1, ec2, require_b_odd)

    if resolved == AnalysisMode.EXHAUSTIVE:
        mask, _cost = _h_exhaustive(g, require_b_odd)
    else:
        rng = random.Random(seed)
        starts = []
        planted = g.planted_partition()
        if planted is not None and len(planted) == size:
            starts.append(sum(1 << v for v in planted))
        while len(starts) < restarts:
            starts.append(_random_part(rng, n, size))
        best: Optional[Tuple[int, int]] = None
        for start in starts:
            found, value = _swap_descent(lambda m: evaluate(m)[0], start, counts.everything)
            if best is None or value < best[1]:
                best = (found, value)
        assert best is not None
        mask = best[0]

    cost, patterns = evaluate(mask)
    report = DistanceReport(
        cost, n, _h_target(n, mask, patterns), resolved == AnalysisMode.EXHAUSTIVE, resolved
    )
    logger.debug("Distance to H family", n=n, cost=cost, mode=resolved.value, b_odd=require_b_odd)
    return report


# =============================================================================
# HALF-SPLIT FAMILY
# =============================================================================


def distance_to_half_split(
    g: GraphCollection,
    mode: AnalysisMode = AnalysisMode.AUTO,
    seed: int = 0,
    restarts: int = DISTANCE_LOCAL_RESTARTS,
    exhaustive_max_n: int = DISTANCE_EXHAUSTIVE_MAX_N,
) -> DistanceReport:
    """
    Toggles needed to make some A of size floor(n/2)+1 independent and
    completely joined to its complement in every color.

    Raises:
        InvalidInputError: if n < 3
        SizeCapExceededError: exhaustive mode above the size cap
    """
    n = g.n
    if n < 3:
        raise InvalidInputError(f"half-split collections need n >= 3, got {n}")
    resolved = _resolve(mode, n, exhaustive_max_n, "distance_to_half_split")
    size = n // 2 + 1
    pairs_across = size * (n - size)
    counts = _PartitionCounts(g)

    def evaluate(mask: int) -> int:
        total = 0
        for c in range(g.colors):
            inside_a, _inside_b, across = counts.split(c, mask)
            total += inside_a + pairs_across - across
        return total

    if resolved == AnalysisMode.EXHAUSTIVE:
        everything = full_mask(n)
        masks = masks_of_size(n, size)
        complements = everything & ~masks
        totals = np.zeros(len(masks), dtype=np.int64)
        for c in range(g.colors):
            table = internal_edge_table(g.rows[c]).astype(np.int64)
            inside_a = table[masks]
            across = g.edge_total(c) - inside_a - table[complements]
            totals += inside_a + pairs_across - across
        mask = int(masks[int(np.argmin(totals))])
    else:
        rng = random.Random(seed)
        starts = []
        planted = g.meta.get("independent_set")
        if planted is not None and len(planted) == size:
            starts.append(sum(1 << int(v) for v in planted))
        while len(starts) < restarts:
            starts.append(_random_part(rng, n, size))
        best: Optional[Tuple[int, int]] = None
        for start in starts:
            found, value = _swap_descent(evaluate, start, counts.everything)
            if best is None or value < best[1]:
                best = (found, value)
        assert best is not None
        mask = best[0]

    cost = evaluate(mask)
    logger.debug("Distance to half-split family", n=n, cost=cost, mode=resolved.value)
    return DistanceReport(
        cost,
        n,
        {"family": "half_split", "A": sorted(set_of(mask))},
        resolved == AnalysisMode.EXHAUSTIVE,
        resolved,
    )


__all__ = [
    "DISTANCE_EXHAUSTIVE_MAX_N",
    "DISTANCE_LOCAL_RESTARTS",
    "DistanceReport",
    "distance_to_H_family",
    "distance_to_half_split",
]
