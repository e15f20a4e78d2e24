"""
Randomized Instance Generators
==============================

Seeded perturbation of collections and random collections conditioned on a
minimum degree. Every function is a deterministic function of its
arguments, including the seed; each call owns a private ``random.Random``.
"""

import random
from itertools import combinations
from typing import List, Optional, Tuple

from ..core.collection import ColoredEdge, GraphCollection, bits, full_mask
from ..core.exceptions import InvalidInputError
from ..core.structured_logger import get_logger

logger = get_logger("constructions.random")

DEFAULT_EDGE_PROBABILITY = 0.5
DEFAULT_REJECTION_ATTEMPTS = 20


def toggle_budget(g: GraphCollection) -> int:
    """Number of distinct single color-edge toggles available on ``g``"""
    return g.colors * g.n * (g.n - 1) // 2


def perturb_with_log(
    g: GraphCollection, edits: int, seed: int
) -> Tuple[GraphCollection, List[ColoredEdge]]:
    """
    Flip min(edits, budget) distinct color-edges chosen uniformly without
    replacement, returning the new collection and the toggle log.
    """
    if edits < 0:
        raise InvalidInputError(f"edits must be >= 0, got {edits}")
    pairs = list(combinations(range(g.n), 2))
    budget = g.colors * len(pairs)
    count = min(edits, budget)
    rng = random.Random(seed)
    chosen = rng.sample(range(budget), count)
    log = [(pairs[i % len(pairs)][0], pairs[i % len(pairs)][1], i // len(pairs)) for i in chosen]

    perturbed = g.with_toggles(log)
    perturbed.meta["perturbation"] = {"edits": count, "seed": seed}
    return perturbed, log


def perturb(g: GraphCollection, edits: int, seed: int) -> GraphCollection:
    """New collection at toggle distance exactly min(edits, budget) from ``g``"""
    return perturb_with_log(g, edits, seed)[0]


def _random_graph_rows(n: int, p: float, rng: random.Random) -> List[int]:
    rows = [0] * n
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return rows


def _repair(rows: List[int], d: int, rng: random.Random) -> int:
    """Add random edges at deficient vertices until every degree is >= d.

    Partners are drawn from other deficient vertices first so one edge
    fixes two deficits where possible. Returns the number of added edges.
    """
    n = len(rows)
    everything = full_mask(n)
    added = 0
    while True:
        deficient = [v for v in range(n) if rows[v].bit_count() < d]
        if not deficient:
            return added
        v = rng.choice(deficient)
        free = everything & ~rows[v] & ~(1 << v)
        preferred = [w for w in bits(free) if rows[w].bit_count() < d]
        w = rng.choice(preferred or list(bits(free)))
        rows[v] |= 1 << w
        rows[w] |= 1 << v
        added += 1


def random_min_degree_collection(
    n: int,
    s: int,
    d: int,
    seed: int,
    p: float = DEFAULT_EDGE_PROBABILITY,
    rejection_attempts: int = DEFAULT_REJECTION_ATTEMPTS,
    meta: Optional[dict] = None,
) -> GraphCollection:
    """
    s independent random graphs on n vertices, each with minimum degree >= d.

    Each color samples G(n, p) up to ``rejection_attempts`` times; if no
    sample meets the floor, the last one is repaired greedily.

    Raises:
        InvalidInputError: if d > n - 1, d < 0 or s < 1
    """
    if n < 1 or s < 1:
        raise InvalidInputError(f"need n >= 1 and s >= 1, got n = {n}, s = {s}")
    if not 0 <= d <= n - 1:
        raise InvalidInputError(f"minimum degree must lie in [0, {n - 1}], got {d}")

    rng = random.Random(seed)
    graphs = []
    repaired = 0
    for _ in range(s):
        for _attempt in range(max(1, rejection_attempts)):
            rows = _random_graph_rows(n, p, rng)
            if min(r.bit_count() for r in rows) >= d:
                break
        else:
            _repair(rows, d, rng)
            repaired += 1
        graphs.append(tuple(rows))

    logger.debug("Sampled min-degree collection", n=n, s=s, d=d, seed=seed, repaired=repaired)
    provenance = {"family": "random_min_degree", "params": {"n": n, "s": s, "d": d, "seed": seed, "p": p}}
    provenance.update(meta or {})
    return GraphCollection(n, tuple(graphs), provenance)


__all__ = [
    "toggle_budget",
    "perturb",
    "perturb_with_log",
    "random_min_degree_collection",
]
