"""
Maximum Transversal Matchings
=============================

Rainbow matchings: vertex-disjoint edges with pairwise distinct colors.

``max_transversal_matching`` is exact. It seeds an incumbent greedily,
improves it with three augmenting moves, then proves optimality with a
branch and bound over colors:

- extension: an unused color with an edge between two free vertices
- 3-path swap: a matched edge ww+ of color c and free vertices v1, v2
  become v1w and w+v2, one of them keeping c and the other taking an
  unused color
- recoloring: a matched edge moves to an unused color that also contains
  it, releasing its old color for an extension
"""

import random
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from ..core.collection import ColoredEdge, GraphCollection, TransversalSubgraph, bits, full_mask
from ..core.structured_logger import get_logger
from ..core.types import SubgraphKind

logger = get_logger("solver.matching")


class _MatchingProblem:
    """Maximum rainbow matching restricted to ``colors``, minus ``banned`` vertex pairs"""

    def __init__(
        self,
        g: GraphCollection,
        colors: Sequence[int],
        banned: Iterable[Tuple[int, int]] = (),
    ):
        self.g = g
        self.colors = list(colors)
        self.rows = {c: list(g.rows[c]) for c in self.colors}
        for u, v in banned:
            for c in self.colors:
                self.rows[c][u] &= ~(1 << v)
                self.rows[c][v] &= ~(1 << u)
        self.ceiling = min(len(self.colors), g.n // 2)

    def has(self, c: int, u: int, v: int) -> bool:
        return bool((self.rows[c][u] >> v) & 1)

    def edge_between(self, c: int, free: int) -> Optional[Tuple[int, int]]:
        for u in bits(free):
            reach = self.rows[c][u] & free & ~((1 << (u + 1)) - 1)
            if reach:
                return u, (reach & -reach).bit_length() - 1
        return None

    # -------------------------------------------------------------------------
    # Incumbent
    # -------------------------------------------------------------------------

    def greedy(self) -> List[ColoredEdge]:
        free = full_mask(self.g.n)
        matching: List[ColoredEdge] = []
        for c in self.colors:
            edge = self.edge_between(c, free)
            if edge is not None:
                u, v = edge
                matching.append((u, v, c))
                free &= ~((1 << u) | (1 << v))
        return matching

    def _extend(self, matching: List[ColoredEdge], free: int, unused: Set[int]) -> bool:
        for c in sorted(unused):
            edge = self.edge_between(c, free)
            if edge is not None:
                matching.append((edge[0], edge[1], c))
                return True
        return False

    def _swap(self, matching: List[ColoredEdge], free: int, unused: Set[int]) -> bool:
        free_list = list(bits(free))
        for i, (a, b, c_old) in enumerate(matching):
            for w, w_plus in ((a, b), (b, a)):
                for v1 in free_list:
                    for v2 in free_list:
                        if v1 == v2:
                            continue
                        for c_new in sorted(unused):
                            if self.has(c_new, v1, w) and self.has(c_old, w_plus, v2):
                                matching[i] = (v1, w, c_new)
                                matching.append((w_plus, v2, c_old))
                                return True
                            if self.has(c_old, v1, w) and self.has(c_new, w_plus, v2):
                                matching[i] = (v1, w, c_old)
                                matching.append((w_plus, v2, c_new))
                                return True
        return False

    def _recolor(self, matching: List[ColoredEdge], free: int, unused: Set[int]) -> bool:
        for i, (u, v, c_old) in enumerate(matching):
            edge = self.edge_between(c_old, free)
            if edge is None:
                continue
            for c_new in sorted(unused):
                if self.has(c_new, u, v):
                    matching[i] = (u, v, c_new)
                    matching.append((edge[0], edge[1], c_old))
                    return True
        return False

    def improve(self, matching: List[ColoredEdge]) -> List[ColoredEdge]:
        """Apply augmenting moves until none applies; each move adds one edge"""
        matching = list(matching)
        while len(matching) < self.ceiling:
            covered = 0
            for u, v, _ in matching:
                covered |= (1 << u) | (1 << v)
            free = full_mask(self.g.n) & ~covered
            unused = set(self.colors) - {c for _, _, c in matching}
            if not (
                self._extend(matching, free, unused)
                or self._swap(matching, free, unused)
                or self._recolor(matching, free, unused)
            ):
                break
        return matching

    # -------------------------------------------------------------------------
    # Exact search
    # -------------------------------------------------------------------------

    def solve(self) -> List[ColoredEdge]:
        best = self.improve(self.greedy())
        if len(best) >= self.ceiling:
            return best

        order = sorted(
            self.colors, key=lambda c: (sum(r.bit_count() for r in self.rows[c]), c)
        )
        incumbent = [best]

        def branch(i: int, free: int, chosen: List[ColoredEdge]) -> bool:
            if len(chosen) > len(incumbent[0]):
                incumbent[0] = list(chosen)
                if len(chosen) >= self.ceiling:
                    return True
            if i == len(order):
                return False
            bound = len(chosen) + min(len(order) - i, free.bit_count() // 2)
            if bound <= len(incumbent[0]):
                return False
            c = order[i]
            for u in bits(free):
                for v in bits(self.rows[c][u] & free & ~((1 << (u + 1)) - 1)):
                    chosen.append((u, v, c))
                    if branch(i + 1, free & ~((1 << u) | (1 << v)), chosen):
                        return True
                    chosen.pop()
            return branch(i + 1, free, chosen)

        branch(0, full_mask(self.g.n), [])
        return incumbent[0]


def _as_matching(edges: List[ColoredEdge]) -> TransversalSubgraph:
    return TransversalSubgraph(tuple(sorted(edges, key=lambda e: e[2])), SubgraphKind.MATCHING)


def max_transversal_matching(
    g: GraphCollection, colors: Optional[Iterable[int]] = None
) -> TransversalSubgraph:
    """
    A maximum-cardinality rainbow matching of ``g``.

    Args:
        g: the collection
        colors: restrict to these colors (default: all)

    Returns:
        TransversalSubgraph of kind ``matching``, edges sorted by color
    """
    chosen = list(range(g.colors)) if colors is None else sorted(set(colors))
    problem = _MatchingProblem(g, chosen)
    matching = problem.solve()
    logger.debug("Maximum transversal matching", n=g.n, colors=len(chosen), size=len(matching))
    return _as_matching(matching)


def two_disjoint_transversal_matchings(
    g: GraphCollection, seed: int
) -> Tuple[TransversalSubgraph, TransversalSubgraph]:
    """
    Split the colors at random into two halves and take a maximum rainbow
    matching in each, the second avoiding the vertex pairs of the first.

    The two matchings use disjoint color sets and share no edge.
    """
    rng = random.Random(seed)
    shuffled = list(range(g.colors))
    rng.shuffle(shuffled)
    half = len(shuffled) // 2
    first_colors, second_colors = sorted(shuffled[:half]), sorted(shuffled[half:])

    first = _MatchingProblem(g, first_colors).solve() if first_colors else []
    banned = [(u, v) for u, v, _ in first]
    second = _MatchingProblem(g, second_colors, banned).solve() if second_colors else []
    return _as_matching(first), _as_matching(second)


__all__ = ["max_transversal_matching", "two_disjoint_transversal_matchings"]
