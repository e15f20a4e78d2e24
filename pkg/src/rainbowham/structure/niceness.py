"""
Niceness and Extremality
========================

A graph G on n vertices is eps-nice when every two vertex sets of size at
least (1/2 - eps)n span at least eps*n^2 edges (counted with the
X ∩ Y-once convention); it is eps-extremal when it is not eps^3-nice.
Because e(A, B) never decreases when vertices are added, only pairs of
size exactly s = ceil((1/2 - eps)n) need checking.

A collection is mu-nice when every A of size floor(n/2) has
e(A) > mu*n^3 and e(A, V \\ A) > mu*n^3, summed over colors.

Modes:
- exhaustive: every size-s pair, vectorized over numpy subset tables
- heuristic: seeded swap descent with structured starts (closed
  neighbourhoods and their complements) before random ones; a "nice"
  answer in this mode is not a proof and is tagged as such
- auto: exhaustive up to ``AUTO_EXHAUSTIVE_MAX_N`` vertices
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.collection import GraphCollection, VertexSet, bits, full_mask, set_of
from ..core.exceptions import InvalidInputError, SizeCapExceededError
from ..core.structured_logger import get_logger
from ..core.types import AnalysisMode
from .constants import (
    AUTO_EXHAUSTIVE_MAX_N,
    EXHAUSTIVE_NICE_MAX_N,
    HALF,
    NICE_HEURISTIC_RESTARTS,
    SUBSET_TABLE_MAX_N,
    as_fraction,
)
from .subsets import (
    adjacency_array,
    between,
    indicator,
    internal_edge_table,
    mask_from_indicator,
    masks_of_size,
    pair_count,
    summed_table,
)

logger = get_logger("structure.niceness")


# =============================================================================
# VERDICTS
# =============================================================================


@dataclass(frozen=True)
class NiceWitness:
    A: VertexSet
    B: VertexSet
    count: int

    def to_dict(self) -> Dict[str, Any]:
        return {"A": sorted(self.A), "B": sorted(self.B), "count": self.count}


@dataclass(frozen=True)
class NicenessVerdict:
    """
    Outcome of ``is_nice``.

    When ``nice`` is False the witness pair has both sides of size
    ``set_size`` and ``count < threshold``.
    """

    nice: bool
    epsilon: Fraction
    mode: AnalysisMode
    set_size: int
    threshold: Fraction
    min_count: int
    witness: Optional[NiceWitness] = None

    @property
    def heuristic(self) -> bool:
        return self.mode == AnalysisMode.HEURISTIC

    def to_dict(self) -> Dict[str, Any]:
        return {
            "nice": self.nice,
            "epsilon": str(self.epsilon),
            "mode": self.mode.value,
            "set_size": self.set_size,
            "threshold": str(self.threshold),
            "min_count": self.min_count,
            "witness": self.witness.to_dict() if self.witness else None,
        }


@dataclass(frozen=True)
class CollectionNicenessVerdict:
    """Outcome of ``is_collection_nice``; ``witness`` violates one of the two bounds"""

    nice: bool
    mu: Fraction
    mode: AnalysisMode
    threshold: Fraction
    witness: Optional[VertexSet] = None
    internal: Optional[int] = None
    crossing: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "nice": self.nice,
            "mu": str(self.mu),
            "mode": self.mode.value,
            "threshold": str(self.threshold),
            "witness": sorted(self.witness) if self.witness is not None else None,
            "internal": self.internal,
            "crossing": self.crossing,
        }


# =============================================================================
# MODE SELECTION
# =============================================================================


def resolve_mode(
    mode: AnalysisMode, n: int, exhaustive_max_n: int, auto_exhaustive_max_n: int, operation: str
) -> AnalysisMode:
    mode = AnalysisMode(mode)
    if mode == AnalysisMode.AUTO:
        return AnalysisMode.EXHAUSTIVE if n <= auto_exhaustive_max_n else AnalysisMode.HEURISTIC
    if mode == AnalysisMode.LOCAL_SEARCH:
        return AnalysisMode.HEURISTIC
    if mode == AnalysisMode.EXHAUSTIVE and n > exhaustive_max_n:
        raise SizeCapExceededError(n, exhaustive_max_n, operation)
    return mode


# =============================================================================
# LOCAL SEARCH HELPERS
# =============================================================================


def adjust_to_size(rows: Tuple[int, ...], mask: int, size: int, everything: int) -> int:
    """
    Trim or pad ``mask`` to ``size`` vertices: drop the vertex with most
    neighbours inside (highest index on ties), add the outside vertex with
    fewest neighbours inside (lowest index on ties).
    """
    while mask.bit_count() > size:
        v = max(bits(mask), key=lambda w: ((rows[w] & mask).bit_count(), w))
        mask &= ~(1 << v)
    while mask.bit_count() < size:
        v = min(bits(everything & ~mask), key=lambda w: ((rows[w] & mask).bit_count(), w))
        mask |= 1 << v
    return mask


def _swap_deltas(
    adjacency: np.ndarray, moving: np.ndarray, other: np.ndarray, to_other: np.ndarray, to_both: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Change of e(X, Y) for every swap out -> into on the ``moving`` side.

    With z = x AND y, e = x.Ay - z.Az / 2; swapping o for i on X changes it by
    (Ay)_i - (Ay)_o + y_o (Az)_o - y_i (Az)_i + y_o y_i A_oi.
    """
    outs = np.flatnonzero(moving)
    ins = np.flatnonzero(moving == 0)
    o_other, i_other = other[outs], other[ins]
    delta = (
        to_other[ins][None, :]
        - to_other[outs][:, None]
        + (o_other * to_both[outs])[:, None]
        - (i_other * to_both[ins])[None, :]
        + o_other[:, None] * i_other[None, :] * adjacency[np.ix_(outs, ins)]
    )
    return outs, ins, delta


def _pair_descent(adjacency: np.ndarray, x: int, y: int) -> Tuple[int, int, int]:
    """
    Best-improvement swaps on X and Y until no swap lowers e(X, Y).

    All swaps of one step are scored at once from the degree vectors
    A.x, A.y and A.(x AND y); ties go to X, then to the lowest removed
    vertex, then to the lowest added one.
    """
    n = adjacency.shape[0]
    xs, ys = indicator(x, n), indicator(y, n)
    best = pair_count(adjacency, xs, ys)
    while best > 0:
        to_x, to_y, to_both = adjacency @ xs, adjacency @ ys, adjacency @ (xs & ys)
        move = None
        for side, moving, other, to_other in ((0, xs, ys, to_y), (1, ys, xs, to_x)):
            outs, ins, delta = _swap_deltas(adjacency, moving, other, to_other, to_both)
            if delta.size == 0:
                continue
            flat = int(np.argmin(delta))
            gain = int(delta.flat[flat])
            if gain < 0 and (move is None or gain < move[0]):
                row, col = divmod(flat, len(ins))
                move = (gain, side, int(outs[row]), int(ins[col]))
        if move is None:
            break
        gain, side, out, into = move
        target = xs if side == 0 else ys
        target[out], target[into] = 0, 1
        best += gain
    return mask_from_indicator(xs), mask_from_indicator(ys), best


def _structured_pairs(rows: Tuple[int, ...], size: int) -> List[Tuple[int, int]]:
    n = len(rows)
    everything = full_mask(n)
    starts = []
    seen = set()
    for v in range(n):
        closed = adjust_to_size(rows, rows[v] | (1 << v), size, everything)
        rest = adjust_to_size(rows, everything & ~(rows[v] | (1 << v)), size, everything)
        for pair in ((rest, rest), (closed, rest)):
            if pair not in seen:
                seen.add(pair)
                starts.append(pair)
    return starts


# =============================================================================
# SINGLE GRAPH
# =============================================================================


def _exhaustive_min_pair(rows: Tuple[int, ...], size: int) -> Tuple[int, int, int]:
    table = internal_edge_table(rows)
    masks = masks_of_size(len(rows), size)
    best = (None, 0, 0)
    for i in range(len(masks)):
        x = masks[i]
        ys = masks[i:]
        counts = between(table, x, ys)
        j = int(np.argmin(counts))
        value = int(counts[j])
        if best[0] is None or value < best[0]:
            best = (value, int(x), int(ys[j]))
            if value == 0:
                break
    return best[0], best[1], best[2]


def _heuristic_min_pair(
    rows: Tuple[int, ...], size: int, cutoff: Fraction, seed: int, restarts: int
) -> Tuple[int, int, int]:
    n = len(rows)
    adjacency = adjacency_array(rows)
    rng = random.Random(seed)
    structured = _structured_pairs(rows, size)
    starts = sorted(
        structured, key=lambda pair: pair_count(adjacency, indicator(pair[0], n), indicator(pair[1], n))
    )[:restarts]
    while len(starts) < restarts:
        starts.append(
            (
                sum(1 << v for v in rng.sample(range(n), size)),
                sum(1 << v for v in rng.sample(range(n), size)),
            )
        )
    best = None
    for x, y in starts:
        x, y, count = _pair_descent(adjacency, x, y)
        if best is None or count < best[0]:
            best = (count, x, y)
        if best[0] < cutoff:
            break
    assert best is not None
    return best


@lru_cache(maxsize=1024)
def _nice_cached(
    rows: Tuple[int, ...], eps: Fraction, mode: AnalysisMode, seed: int, restarts: int
) -> NicenessVerdict:
    n = len(rows)
    size = math.ceil((HALF - eps) * n)
    threshold = eps * n * n
    if mode == AnalysisMode.EXHAUSTIVE:
        count, x, y = _exhaustive_min_pair(rows, size)
    else:
        count, x, y = _heuristic_min_pair(rows, size, threshold, seed, restarts)
    witness = NiceWitness(set_of(x), set_of(y), count) if count < threshold else None
    return NicenessVerdict(witness is None, eps, mode, size, threshold, count, witness)


def is_nice(
    g: GraphCollection,
    eps,
    mode: AnalysisMode = AnalysisMode.AUTO,
    color: int = 0,
    seed: int = 0,
    restarts: int = NICE_HEURISTIC_RESTARTS,
    exhaustive_max_n: int = EXHAUSTIVE_NICE_MAX_N,
    auto_exhaustive_max_n: int = AUTO_EXHAUSTIVE_MAX_N,
) -> NicenessVerdict:
    """
    Decide whether G_color is eps-nice.

    Args:
        g: collection holding the graph
        eps: rational in (0, 1/2); floats are read through their decimal string
        mode: exhaustive, heuristic or auto
        color: which graph of ``g``
        seed: local-search seed
        restarts: local-search restarts

    Raises:
        InvalidInputError: if eps is outside (0, 1/2)
        SizeCapExceededError: exhaustive mode above ``exhaustive_max_n``
    """
    eps = as_fraction(eps)
    if not 0 < eps < HALF:
        raise InvalidInputError(f"eps must lie in (0, 1/2), got {eps}")
    resolved = resolve_mode(mode, g.n, exhaustive_max_n, auto_exhaustive_max_n, "is_nice")
    if resolved == AnalysisMode.EXHAUSTIVE and g.n > SUBSET_TABLE_MAX_N:
        raise SizeCapExceededError(g.n, SUBSET_TABLE_MAX_N, "is_nice")
    verdict = _nice_cached(g.rows[color], eps, resolved, seed, restarts)
    logger.debug(
        "Niceness verdict",
        color=color,
        eps=str(eps),
        mode=resolved.value,
        nice=verdict.nice,
        min_count=verdict.min_count,
    )
    return verdict


def is_extremal(
    g: GraphCollection,
    eps,
    mode: AnalysisMode = AnalysisMode.AUTO,
    color: int = 0,
    seed: int = 0,
    restarts: int = NICE_HEURISTIC_RESTARTS,
) -> bool:
    """G_color is eps-extremal: not eps^3-nice"""
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise InvalidInputError(f"eps must lie in (0, 1), got {eps}")
    mu = eps**3
    if mu >= HALF:
        # Sets of size >= (1/2 - mu)n include the empty set.
        return True
    return not is_nice(g, mu, mode, color, seed, restarts).nice


# =============================================================================
# COLLECTIONS
# =============================================================================


def _summed_adjacency(g: GraphCollection) -> np.ndarray:
    """Sum of the color adjacency matrices; entry uv is |L(uv)|"""
    total = np.zeros((g.n, g.n), dtype=np.int64)
    for rows in g.rows:
        total += adjacency_array(rows)
    return total


def _collection_descent(weights: np.ndarray, mask: int) -> Tuple[int, int]:
    """
    Best-improvement swaps of one vertex of A for one outside it until
    min(e(A), e(A, V \\ A)) stops falling; ties go to the lowest removed
    vertex, then to the lowest added one.
    """
    n = weights.shape[0]
    total = int(weights.sum()) // 2
    inside_vec = indicator(mask, n)
    best = None
    while True:
        outside_vec = 1 - inside_vec
        to_inside, to_outside = weights @ inside_vec, weights @ outside_vec
        inside = int(inside_vec @ to_inside) // 2
        crossing = total - inside - int(outside_vec @ to_outside) // 2
        best = min(inside, crossing)
        if best == 0:
            break
        outs, ins = np.flatnonzero(inside_vec), np.flatnonzero(outside_vec)
        if outs.size == 0 or ins.size == 0:
            break
        pair_weights = weights[np.ix_(outs, ins)]
        gain_inside = to_inside[ins][None, :] - to_inside[outs][:, None] - pair_weights
        gain_outside = to_outside[outs][:, None] - to_outside[ins][None, :] - pair_weights
        value = np.minimum(inside + gain_inside, crossing - gain_inside - gain_outside)
        flat = int(np.argmin(value))
        if int(value.flat[flat]) >= best:
            break
        row, col = divmod(flat, len(ins))
        inside_vec[outs[row]], inside_vec[ins[col]] = 0, 1
    return mask_from_indicator(inside_vec), best


def is_collection_nice(
    g: GraphCollection,
    mu,
    mode: AnalysisMode = AnalysisMode.AUTO,
    seed: int = 0,
    restarts: int = NICE_HEURISTIC_RESTARTS,
    exhaustive_max_n: int = EXHAUSTIVE_NICE_MAX_N,
    auto_exhaustive_max_n: int = AUTO_EXHAUSTIVE_MAX_N,
) -> CollectionNicenessVerdict:
    """
    Whether every A of size floor(n/2) has e(A) > mu*n^3 and
    e(A, V \\ A) > mu*n^3, with counts summed over all colors.

    The witness is the A minimizing min(e(A), e(A, V \\ A)) among those
    scanned (first in mask order on ties).
    """
    mu = as_fraction(mu)
    if mu <= 0:
        raise InvalidInputError(f"mu must be positive, got {mu}")
    resolved = resolve_mode(mode, g.n, exhaustive_max_n, auto_exhaustive_max_n, "is_collection_nice")
    n = g.n
    half = n // 2
    threshold = mu * n**3
    cut = math.floor(threshold)

    if resolved == AnalysisMode.EXHAUSTIVE:
        table = summed_table(g.rows)
        everything = full_mask(n)
        masks = masks_of_size(n, half)
        inside = table[masks]
        crossing = table[everything] - inside - table[everything & ~masks]
        worst = np.minimum(inside, crossing)
        i = int(np.argmin(worst))
        mask, value = int(masks[i]), int(worst[i])
        inside_count, crossing_count = int(inside[i]), int(crossing[i])
    else:
        weights = _summed_adjacency(g)
        rng = random.Random(seed)
        starts = []
        planted = g.planted_partition()
        if planted is not None:
            starts.append(sum(1 << v for v in sorted(planted)[:half]))
        for c in range(g.colors):
            rows = g.rows[c]
            for v in range(n):
                if len(starts) >= restarts:
                    break
                starts.append(adjust_to_size(rows, rows[v] | (1 << v), half, full_mask(n)))
        while len(starts) < restarts:
            starts.append(sum(1 << v for v in rng.sample(range(n), half)))
        best = None
        for start in dict.fromkeys(starts[:restarts]):
            mask, value = _collection_descent(weights, start)
            if best is None or value < best[1]:
                best = (mask, value)
            if best[1] <= cut:
                break
        assert best is not None
        mask, value = best
        chosen = indicator(mask, n)
        inside_count = int(chosen @ weights @ chosen) // 2
        crossing_count = int(chosen @ weights @ (1 - chosen))

    if value <= cut:
        return CollectionNicenessVerdict(
            False, mu, resolved, threshold, set_of(mask), inside_count, crossing_count
        )
    return CollectionNicenessVerdict(True, mu, resolved, threshold)


__all__ = [
    "NiceWitness",
    "NicenessVerdict",
    "CollectionNicenessVerdict",
    "resolve_mode",
    "adjust_to_size",
    "is_nice",
    "is_extremal",
    "is_collection_nice",
]
