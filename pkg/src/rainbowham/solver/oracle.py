"""
Brute-Force Oracle
==================

Independent check for the exact solver. Every Hamilton vertex order is
enumerated (only rotations of cycles and reversals of paths are
identified, which holds in every collection); an order is colorable when
a bipartite matching between its edge positions and the colors saturates
the positions. Matchings come from networkx Hopcroft-Karp, and results
are cached on the multiset of position color-masks.
"""

from itertools import permutations
from typing import Dict, Tuple

import networkx as nx
from networkx.algorithms import bipartite

from ..core.collection import GraphCollection, bits, color_list, mask_of
from ..core.exceptions import InvalidInputError, SizeCapExceededError
from ..core.types import Target

ORACLE_MAX_N = 9


def _pair_masks(g: GraphCollection) -> Tuple[Tuple[int, ...], ...]:
    """Color mask of L(uv) for every ordered pair, 0 on the diagonal"""
    return tuple(
        tuple(0 if u == v else mask_of(color_list(g, u, v)) for v in range(g.n)) for u in range(g.n)
    )


def _colorable(masks: Tuple[int, ...], cache: Dict[Tuple[int, ...], bool]) -> bool:
    key = tuple(sorted(masks))
    if key in cache:
        return cache[key]
    graph = nx.Graph()
    positions = [("p", i) for i in range(len(masks))]
    graph.add_nodes_from(positions, bipartite=0)
    for i, mask in enumerate(masks):
        for c in bits(mask):
            graph.add_edge(("p", i), ("c", c))
    matching = bipartite.hopcroft_karp_matching(graph, top_nodes=positions)
    result = all(p in matching for p in positions)
    cache[key] = result
    return result


def brute_force_oracle(g: GraphCollection, target: Target, max_n: int = ORACLE_MAX_N) -> bool:
    """
    Whether ``g`` has a rainbow Hamilton cycle (target ``cycle``, n colors)
    or path (target ``path``, n - 1 colors), by enumeration.

    Raises:
        SizeCapExceededError: if n > max_n
        InvalidInputError: if the color count does not fit the target
    """
    target = Target(target)
    n = g.n
    if n > max_n:
        raise SizeCapExceededError(n, max_n, "brute_force_oracle")
    needed = n if target == Target.CYCLE else n - 1
    if g.colors != needed:
        raise InvalidInputError(f"{target} oracle needs {needed} colors, got {g.colors}")
    if target == Target.CYCLE and n < 3:
        raise InvalidInputError(f"Hamilton cycles need n >= 3, got n = {n}")

    pairs = _pair_masks(g)
    cache: Dict[Tuple[int, ...], bool] = {}

    if target == Target.CYCLE:
        orders = ((0,) + rest for rest in permutations(range(1, n)))
    else:
        orders = (order for order in permutations(range(n)) if order[0] < order[-1])

    for order in orders:
        steps = len(order) if target == Target.CYCLE else len(order) - 1
        masks = tuple(pairs[order[i]][order[(i + 1) % len(order)]] for i in range(steps))
        if all(masks) and _colorable(masks, cache):
            return True
    return False


__all__ = ["ORACLE_MAX_N", "brute_force_oracle"]
