"""
Characteristic Partitions
=========================

Extraction of a characteristic partition (A, B, C) from an eps-extremal
graph, following the constructive two-case argument. With mu = eps^3,
take sets X, Y of size ceil((1/2 - mu)n) with e(X, Y) < mu*n^2 (the
``is_nice`` witness), U = X ∩ Y and D = V \\ (X ∪ Y).

- Case 1 (|U| >= 2 sqrt(mu) n): drop from U the vertices with few
  neighbours in D, then from D those with few neighbours in what is
  left of U. A comes from U, B from D, and the graph is EC2-extremal.
- Case 2: drop from X the vertices with many neighbours in Y and from Y
  those with many neighbours in X, then A comes from X \\ Y and B from
  Y \\ X. The graph is EC1-extremal.

Both sides are trimmed to exactly floor((1/2 - eps)n) vertices, dropping
the vertex with the smallest side degree (lowest index on ties). At desk
scale the asymptotic hierarchy does not hold; when the pools fall short
or the output misses a partition invariant, no partition is returned.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from ..core.collection import GraphCollection, VertexSet, bits, full_mask, mask_of, set_of
from ..core.exceptions import InvalidInputError, PreconditionError
from ..core.structured_logger import get_logger
from ..core.types import AnalysisMode, PartitionKind
from .constants import (
    CASE1_OVERLAP,
    CASE1_STRIP,
    CASE2_CROSS,
    HALF,
    NICE_HEURISTIC_RESTARTS,
    PART_DEGREE,
    as_fraction,
)
from .niceness import is_nice

logger = get_logger("structure.partition")


@dataclass(frozen=True)
class CharacteristicPartition:
    """(A, B, C) partition of the vertex set; |A| = |B| = floor((1/2 - eps)n)"""

    A: VertexSet
    B: VertexSet
    C: VertexSet
    kind: PartitionKind
    epsilon: Fraction
    case: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "A": sorted(self.A),
            "B": sorted(self.B),
            "C": sorted(self.C),
            "kind": self.kind.value,
            "epsilon": str(self.epsilon),
            "case": self.case,
        }


def target_part_size(n: int, eps: Fraction) -> int:
    return math.floor((HALF - eps) * n)


def partition_violations(
    g: GraphCollection, color: int, part: CharacteristicPartition
) -> List[str]:
    """Names of the partition invariants that ``part`` fails for G_color (empty when valid)"""
    n = g.n
    eps = part.epsilon
    rows = g.rows[color]
    a, b, c = mask_of(part.A), mask_of(part.B), mask_of(part.C)
    failures = []
    if a & b or a & c or b & c or (a | b | c) != full_mask(n):
        failures.append("not_a_partition")
    size = target_part_size(n, eps)
    if len(part.A) != size or len(part.B) != size:
        failures.append("part_size")

    floor = (HALF - PART_DEGREE * eps) * n
    budget = eps * n * n
    inside_a = g.internal_edges(color, a)
    inside_b = g.internal_edges(color, b)
    across = g.internal_edges(color, a | b) - inside_a - inside_b
    if part.kind == PartitionKind.EC1_EXTREMAL:
        if across > budget:
            failures.append("cross_edges")
        if any((rows[v] & a).bit_count() < floor for v in bits(a)) or any(
            (rows[v] & b).bit_count() < floor for v in bits(b)
        ):
            failures.append("side_degree")
    else:
        if any((rows[v] & b).bit_count() < floor for v in bits(a)) or any(
            (rows[v] & a).bit_count() < floor for v in bits(b)
        ):
            failures.append("cross_degree")
        if min(inside_a, inside_b) > budget:
            failures.append("internal_edges")
    return failures


def _trim(pool: int, size: int, score: Callable[[int, int], int]) -> int:
    """Drop the lowest-scoring vertex (lowest index on ties) until ``size`` remain"""
    while pool.bit_count() > size:
        v = min(bits(pool), key=lambda w: (score(w, pool), w))
        pool &= ~(1 << v)
    return pool


def characteristic_partition(
    g: GraphCollection,
    eps,
    color: int = 0,
    mode: AnalysisMode = AnalysisMode.AUTO,
    seed: int = 0,
    restarts: int = NICE_HEURISTIC_RESTARTS,
) -> Optional[CharacteristicPartition]:
    """
    Characteristic partition of G_color, or None when the extraction falls
    short at this size.

    Raises:
        InvalidInputError: if eps is outside (0, 1) or eps^3 >= 1/2
        PreconditionError: if G_color is not eps-extremal under ``mode``
    """
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise InvalidInputError(f"eps must lie in (0, 1), got {eps}")
    mu = eps**3
    if mu >= HALF:
        raise InvalidInputError(f"eps^3 must be below 1/2, got {mu}")
    n = g.n
    rows = g.rows[color]
    verdict = is_nice(g, mu, mode, color, seed, restarts)
    if verdict.nice:
        raise PreconditionError(
            f"color {color} is not {eps}-extremal",
            details={"mode": verdict.mode.value, "min_count": verdict.min_count},
        )
    assert verdict.witness is not None

    low_degree = [v for v in range(n) if rows[v].bit_count() < (HALF - mu) * n]
    if len(low_degree) > mu * n:
        logger.warning(
            "Degree floor of the extraction does not hold",
            color=color,
            low_degree_vertices=len(low_degree),
            allowed=float(mu * n),
        )

    root = math.sqrt(float(mu))
    x, y = mask_of(verdict.witness.A), mask_of(verdict.witness.B)
    overlap = x & y
    everything = full_mask(n)
    size = target_part_size(n, eps)

    def degree_into(target: int) -> Callable[[int, int], int]:
        return lambda v, _pool: (rows[v] & target).bit_count()

    def degree_within(v: int, pool: int) -> int:
        return (rows[v] & pool).bit_count()

    if overlap.bit_count() >= CASE1_OVERLAP * root * n:
        case, kind = 1, PartitionKind.EC2_EXTREMAL
        outside = everything & ~(x | y)
        low = (0.5 - CASE1_STRIP * root) * n
        a_pool = sum(1 << u for u in bits(overlap) if (rows[u] & outside).bit_count() > low)
        b_pool = sum(1 << w for w in bits(outside) if (rows[w] & a_pool).bit_count() > low)
        a_part = _trim(a_pool, size, degree_into(b_pool)) if a_pool.bit_count() >= size else None
        b_part = (
            _trim(b_pool, size, degree_into(a_part))
            if a_part is not None and b_pool.bit_count() >= size
            else None
        )
    else:
        case, kind = 2, PartitionKind.EC1_EXTREMAL
        cross = CASE2_CROSS * root * n
        x_kept = sum(1 << v for v in bits(x) if (rows[v] & y).bit_count() <= cross)
        y_kept = sum(1 << v for v in bits(y) if (rows[v] & x).bit_count() <= cross)
        a_pool, b_pool = x_kept & ~y, y_kept & ~x
        a_part = _trim(a_pool, size, degree_within) if a_pool.bit_count() >= size else None
        b_part = _trim(b_pool, size, degree_within) if b_pool.bit_count() >= size else None

    if a_part is None or b_part is None:
        logger.info(
            "Characteristic partition pools fall short",
            color=color,
            case=case,
            a_pool=a_pool.bit_count(),
            b_pool=b_pool.bit_count(),
            needed=size,
        )
        return None

    part = CharacteristicPartition(
        set_of(a_part),
        set_of(b_part),
        set_of(everything & ~(a_part | b_part)),
        kind,
        eps,
        case,
    )
    failures = partition_violations(g, color, part)
    if failures:
        logger.info("Extracted partition misses invariants", color=color, case=case, failed=failures)
        return None
    return part


__all__ = [
    "CharacteristicPartition",
    "target_part_size",
    "partition_violations",
    "characteristic_partition",
]
