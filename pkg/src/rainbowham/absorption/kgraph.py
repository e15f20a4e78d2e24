"""
Directed k-Graphs and Random Transversal Matchings
==================================================

A directed k-graph on {0, ..., n-1} is a set of k-tuples of distinct
vertices; a directed multi-k-graph may repeat tuples. Families are kept
implicit where enumeration would be wasteful:

- ``ExplicitKGraph``: a stored (multi)set of tuples
- ``CompleteKGraph``: every k-tuple of distinct vertices
- ``ColorPathFamily``: 4-tuples (v1, v2, v3, v4) whose three consecutive
  pairs carry a fixed color triple in a graph collection
- ``AbsorbingPathTarget``: the multiset union, over a list of color path
  families, of the tuples that are c-absorbing paths of an anchor (v, u)

``random_transversal_matching`` picks one tuple per host uniformly at
random, deletes one tuple from every intersecting pair and counts how
many surviving tuples each target contains, retrying a bounded number
of rounds until the size and coverage guarantees hold.
"""

import math
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from ..core.collection import GraphCollection, bits
from ..core.exceptions import InvalidInputError
from ..core.structured_logger import get_logger
from ..structure.constants import as_fraction

logger = get_logger("absorption.kgraph")

KTuple = Tuple[int, ...]

DEFAULT_MATCHING_ROUNDS = 20


# =============================================================================
# DIRECTED K-GRAPHS
# =============================================================================


class DirectedKGraph(ABC):
    """
    Abstract directed (multi-)k-graph on the vertex set {0, ..., n-1}.

    Implementations provide counting, membership, enumeration and uniform
    sampling; the overlap with another k-graph has a generic fallback that
    enumerates the smaller side.
    """

    def __init__(self, n: int, k: int, multi: bool = False):
        if n < 1 or k < 1:
            raise InvalidInputError(f"k-graphs need n >= 1 and k >= 1, got n = {n}, k = {k}")
        self.n = n
        self.k = k
        self.multi = multi

    @abstractmethod
    def size(self) -> int:
        """Number of tuples, counted with multiplicity"""
        pass

    @abstractmethod
    def multiplicity(self, edge: KTuple) -> int:
        pass

    @abstractmethod
    def items(self) -> Iterator[Tuple[KTuple, int]]:
        """(tuple, multiplicity) pairs, each distinct tuple once"""
        pass

    @abstractmethod
    def sample(self, rng: random.Random) -> Optional[KTuple]:
        """A uniformly random tuple (by multiplicity), or None when empty"""
        pass

    def __contains__(self, edge: object) -> bool:
        return isinstance(edge, tuple) and self.multiplicity(edge) > 0

    def hits(self, edge: KTuple, host: "DirectedKGraph") -> int:
        """How many copies of ``edge``, drawn from ``host``, this k-graph holds"""
        return self.multiplicity(edge)

    def overlap(self, host: "DirectedKGraph") -> int:
        """|E(self) ∩ E(host)| counted with the multiplicity of ``self``"""
        if self.size() <= host.size():
            return sum(count for edge, count in self.items() if edge in host)
        return sum(self.hits(edge, host) for edge, _ in host.items())

    def _in_range(self, edge: KTuple) -> bool:
        return (
            len(edge) == self.k
            and len(set(edge)) == self.k
            and all(0 <= x < self.n for x in edge)
        )


class ExplicitKGraph(DirectedKGraph):
    """Stored tuples; repeated tuples are kept only when ``multi`` is set"""

    def __init__(self, n: int, k: int, edges: Sequence[Sequence[int]] = (), multi: bool = False):
        super().__init__(n, k, multi)
        self._counts: Dict[KTuple, int] = {}
        for raw in edges:
            edge = tuple(int(x) for x in raw)
            if not self._in_range(edge):
                raise InvalidInputError(
                    f"tuple {edge} needs {k} distinct vertices in range for n = {n}"
                )
            if multi:
                self._counts[edge] = self._counts.get(edge, 0) + 1
            else:
                self._counts[edge] = 1
        self._flat: List[KTuple] = [e for e, count in self._counts.items() for _ in range(count)]

    def size(self) -> int:
        return len(self._flat)

    def multiplicity(self, edge: KTuple) -> int:
        return self._counts.get(tuple(edge), 0)

    def items(self) -> Iterator[Tuple[KTuple, int]]:
        return iter(self._counts.items())

    def sample(self, rng: random.Random) -> Optional[KTuple]:
        if not self._flat:
            return None
        return self._flat[rng.randrange(len(self._flat))]


class CompleteKGraph(DirectedKGraph):
    """Every k-tuple of distinct vertices"""

    def __init__(self, n: int, k: int):
        if k > n:
            raise InvalidInputError(f"no {k}-tuples of distinct vertices exist for n = {n}")
        super().__init__(n, k)

    def size(self) -> int:
        return math.perm(self.n, self.k)

    def multiplicity(self, edge: KTuple) -> int:
        return 1 if self._in_range(tuple(edge)) else 0

    def items(self) -> Iterator[Tuple[KTuple, int]]:
        for edge in permutations(range(self.n), self.k):
            yield edge, 1

    def sample(self, rng: random.Random) -> Optional[KTuple]:
        return tuple(rng.sample(range(self.n), self.k))

    def overlap(self, host: DirectedKGraph) -> int:
        if isinstance(host, CompleteKGraph) and host.n == self.n and host.k == self.k:
            return self.size()
        return sum(count for edge, count in host.items() if self._in_range(edge))


class ColorPathFamily(DirectedKGraph):
    """
    4-tuples (v1, v2, v3, v4) of distinct vertices with
    colors[l] ∈ L(v_l v_{l+1}) for l = 0, 1, 2.

    Sampling weights each ordered middle pair (v2, v3) by the number of
    valid (v1, v4) completions, then draws v1 and v4 uniformly and
    rejects v1 == v4.
    """

    def __init__(self, g: GraphCollection, colors: Sequence[int]):
        super().__init__(g.n, 4)
        if len(colors) != 3:
            raise InvalidInputError(f"color path families need 3 colors, got {len(colors)}")
        for c in colors:
            if not 0 <= c < g.colors:
                raise InvalidInputError(f"color {c} out of range for {g.colors} colors")
        self.g = g
        self.colors: Tuple[int, int, int] = (colors[0], colors[1], colors[2])
        self._pairs: Optional[List[Tuple[int, int, int]]] = None

    def _middle_pairs(self) -> List[Tuple[int, int, int]]:
        """(v2, v3, completions) for every ordered middle edge with completions > 0"""
        if self._pairs is None:
            first, middle, last = (self.g.rows[c] for c in self.colors)
            pairs = []
            for v2 in range(self.n):
                for v3 in bits(middle[v2]):
                    ends_1 = first[v2] & ~(1 << v3)
                    ends_4 = last[v3] & ~(1 << v2)
                    count = ends_1.bit_count() * ends_4.bit_count() - (ends_1 & ends_4).bit_count()
                    if count:
                        pairs.append((v2, v3, count))
            self._pairs = pairs
        return self._pairs

    def size(self) -> int:
        return sum(count for _, _, count in self._middle_pairs())

    def multiplicity(self, edge: KTuple) -> int:
        edge = tuple(edge)
        if not self._in_range(edge):
            return 0
        rows = self.g.rows
        return int(all((rows[c][edge[i]] >> edge[i + 1]) & 1 for i, c in enumerate(self.colors)))

    def items(self) -> Iterator[Tuple[KTuple, int]]:
        first, _middle, last = (self.g.rows[c] for c in self.colors)
        for v2, v3, _count in self._middle_pairs():
            for v1 in bits(first[v2] & ~(1 << v3)):
                for v4 in bits(last[v3] & ~(1 << v2) & ~(1 << v1)):
                    yield (v1, v2, v3, v4), 1

    def sample(self, rng: random.Random) -> Optional[KTuple]:
        pairs = self._middle_pairs()
        if not pairs:
            return None
        v2, v3, _ = rng.choices(pairs, weights=[count for _, _, count in pairs])[0]
        ends_1 = list(bits(self.g.rows[self.colors[0]][v2] & ~(1 << v3)))
        ends_4 = list(bits(self.g.rows[self.colors[2]][v3] & ~(1 << v2)))
        while True:
            v1, v4 = rng.choice(ends_1), rng.choice(ends_4)
            if v1 != v4:
                return (v1, v2, v3, v4)


class AbsorbingPathTarget(DirectedKGraph):
    """
    Tuples of the given color path families that are c-absorbing paths of
    (v, u): v and u are off the path, c ∈ L(v2 v) and the middle color of
    the family lies in L(v3 u). A tuple counts once per family it
    qualifies in.
    """

    def __init__(
        self,
        g: GraphCollection,
        c: int,
        v: int,
        u: int,
        families: Sequence[ColorPathFamily],
    ):
        super().__init__(g.n, 4, multi=True)
        if not 0 <= c < g.colors:
            raise InvalidInputError(f"color {c} out of range for {g.colors} colors")
        if not (0 <= v < g.n and 0 <= u < g.n):
            raise InvalidInputError(f"anchor ({v}, {u}) out of range for n = {g.n}")
        self.g = g
        self.c = c
        self.v = v
        self.u = u
        self.families = list(families)

    def _absorbing_in(self, edge: KTuple, family: ColorPathFamily) -> bool:
        if family.multiplicity(edge) == 0 or self.v in edge or self.u in edge:
            return False
        rows = self.g.rows
        return bool((rows[self.c][self.v] >> edge[1]) & 1) and bool(
            (rows[family.colors[1]][self.u] >> edge[2]) & 1
        )

    def hits(self, edge: KTuple, host: DirectedKGraph) -> int:
        if isinstance(host, ColorPathFamily):
            return int(self._absorbing_in(tuple(edge), host))
        return self.multiplicity(edge)

    def multiplicity(self, edge: KTuple) -> int:
        edge = tuple(edge)
        return sum(self._absorbing_in(edge, family) for family in self.families)

    def _count_in(self, family: ColorPathFamily) -> int:
        rows = self.g.rows
        first, middle, last = (rows[c] for c in family.colors)
        anchors = (1 << self.v) | (1 << self.u)
        total = 0
        for v2 in bits(rows[self.c][self.v] & ~anchors):
            for v3 in bits(middle[v2] & middle[self.u] & ~anchors):
                ends_1 = first[v2] & ~(1 << v3) & ~anchors
                ends_4 = last[v3] & ~(1 << v2) & ~anchors
                total += ends_1.bit_count() * ends_4.bit_count() - (ends_1 & ends_4).bit_count()
        return total

    def size(self) -> int:
        return sum(self._count_in(family) for family in self.families)

    def overlap(self, host: DirectedKGraph) -> int:
        if isinstance(host, ColorPathFamily):
            return self._count_in(host)
        return super().overlap(host)

    def items(self) -> Iterator[Tuple[KTuple, int]]:
        seen = set()
        for family in self.families:
            for edge, _ in family.items():
                if edge not in seen and self._absorbing_in(edge, family):
                    seen.add(edge)
                    yield edge, self.multiplicity(edge)

    def sample(self, rng: random.Random) -> Optional[KTuple]:
        flat = [edge for edge, count in self.items() for _ in range(count)]
        return rng.choice(flat) if flat else None


@dataclass
class DirectedKGraphCollection:
    """Indexed k-graphs sharing n and k"""

    graphs: List[DirectedKGraph] = field(default_factory=list)

    def __post_init__(self) -> None:
        shapes = {(h.n, h.k) for h in self.graphs}
        if len(shapes) > 1:
            raise InvalidInputError(f"k-graphs of one collection must share n and k, got {sorted(shapes)}")

    @property
    def n(self) -> int:
        return self.graphs[0].n if self.graphs else 0

    @property
    def k(self) -> int:
        return self.graphs[0].k if self.graphs else 0

    @property
    def multi(self) -> bool:
        return any(h.multi for h in self.graphs)

    def __len__(self) -> int:
        return len(self.graphs)

    def __getitem__(self, index: int) -> DirectedKGraph:
        return self.graphs[index]

    def __iter__(self) -> Iterator[DirectedKGraph]:
        return iter(self.graphs)


# =============================================================================
# RANDOM TRANSVERSAL MATCHING
# =============================================================================


@dataclass(frozen=True)
class HypothesisReport:
    """Host and target conditions under which the guarantees are promised"""

    checked: bool
    sparse_hosts: Tuple[int, ...] = ()
    weak_targets: Tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.checked and not self.sparse_hosts and not self.weak_targets

    def to_dict(self) -> Dict[str, Any]:
        return {
            "checked": self.checked,
            "ok": self.ok,
            "sparse_hosts": list(self.sparse_hosts),
            "weak_targets": list(self.weak_targets),
        }


@dataclass(frozen=True)
class TransversalMatchingResult:
    """
    The best attempt: ``edges`` maps a host index to its surviving tuple.
    ``guaranteed`` is True when both the size and the coverage floors were
    met in that attempt.
    """

    edges: Dict[int, KTuple]
    coverage: Tuple[int, ...]
    size_floor: Fraction
    coverage_floor: Fraction
    guaranteed: bool
    rounds: int
    intersecting_pairs: int
    hypotheses: HypothesisReport

    @property
    def size(self) -> int:
        return len(self.edges)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "edges": {str(i): list(e) for i, e in sorted(self.edges.items())},
            "size": self.size,
            "coverage": list(self.coverage),
            "size_floor": str(self.size_floor),
            "coverage_floor": str(self.coverage_floor),
            "guaranteed": self.guaranteed,
            "rounds": self.rounds,
            "intersecting_pairs": self.intersecting_pairs,
            "hypotheses": self.hypotheses.to_dict(),
        }


def check_matching_hypotheses(
    H: DirectedKGraphCollection, Z: DirectedKGraphCollection, eps
) -> HypothesisReport:
    """Hosts with fewer than eps*n^k tuples, and targets that meet fewer than eps*t hosts in eps*n^k tuples"""
    eps = as_fraction(eps)
    floor = eps * H.n**H.k
    sparse = tuple(i for i, host in enumerate(H) if host.size() < floor)
    needed = eps * len(H)
    weak = tuple(
        j
        for j, target in enumerate(Z)
        if sum(1 for host in H if target.overlap(host) >= floor) < needed
    )
    return HypothesisReport(True, sparse, weak)


def _attempt(
    H: DirectedKGraphCollection, Z: DirectedKGraphCollection, rng: random.Random
) -> Tuple[Dict[int, KTuple], List[int], int]:
    drawn: Dict[int, KTuple] = {}
    for i, host in enumerate(H):
        edge = host.sample(rng)
        if edge is not None:
            drawn[i] = edge
    order = sorted(drawn)
    vertex_sets = {i: set(drawn[i]) for i in order}
    removed = set()
    pairs = 0
    for a, i in enumerate(order):
        for j in order[a + 1 :]:
            if vertex_sets[i] & vertex_sets[j]:
                pairs += 1
                if i not in removed and j not in removed:
                    removed.add(j)
    kept = {i: drawn[i] for i in order if i not in removed}
    coverage = [sum(target.hits(edge, H[i]) for i, edge in kept.items()) for target in Z]
    return kept, coverage, pairs


def random_transversal_matching(
    H: DirectedKGraphCollection,
    Z: DirectedKGraphCollection,
    eps,
    seed: int = 0,
    rounds: int = DEFAULT_MATCHING_ROUNDS,
    check_hypotheses: bool = True,
) -> TransversalMatchingResult:
    """
    Transversal matching of ``H`` that hits every target of ``Z``.

    Each round draws one tuple per host, then walks the intersecting
    pairs in index order and drops the later tuple of any pair whose
    tuples both survive. A round succeeds when at least (1 - eps^2/4)t
    tuples survive and every target holds at least eps^2*t/4 of them.
    After ``rounds`` failed rounds the best attempt is returned with
    ``guaranteed`` False.

    The output is a matching with at most one tuple per host in every
    case. Hypothesis violations are reported and logged, never raised.

    Raises:
        InvalidInputError: if eps is outside (0, 1), rounds < 1, or the
            hosts and targets disagree on n or k
    """
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise InvalidInputError(f"eps must lie in (0, 1), got {eps}")
    if rounds < 1:
        raise InvalidInputError(f"rounds must be at least 1, got {rounds}")
    if len(H) and len(Z) and (H.n, H.k) != (Z.n, Z.k):
        raise InvalidInputError(f"hosts are ({H.n}, {H.k})-shaped but targets ({Z.n}, {Z.k})")

    t = len(H)
    if check_hypotheses and t:
        hypotheses = check_matching_hypotheses(H, Z, eps)
        if not hypotheses.ok:
            logger.warning(
                "Matching hypotheses violated",
                sparse_hosts=list(hypotheses.sparse_hosts),
                weak_targets=len(hypotheses.weak_targets),
            )
    else:
        hypotheses = HypothesisReport(False)

    size_floor = (1 - eps**2 / 4) * t
    coverage_floor = eps**2 * t / 4
    rng = random.Random(seed)
    best: Optional[Tuple[Tuple[bool, int, int], Dict[int, KTuple], List[int], int, int]] = None
    for round_number in range(1, rounds + 1):
        kept, coverage, pairs = _attempt(H, Z, rng)
        covered = sum(1 for hit in coverage if hit >= coverage_floor)
        met = len(kept) >= size_floor and covered == len(coverage)
        score = (met, covered, len(kept))
        if best is None or score > best[0]:
            best = (score, kept, coverage, pairs, round_number)
        if met:
            break
    assert best is not None
    (met, _covered, _size), kept, coverage, pairs, used = best

    result = TransversalMatchingResult(
        kept, tuple(coverage), size_floor, coverage_floor, met, round_number, pairs, hypotheses
    )
    logger.debug(
        "Random transversal matching",
        hosts=t,
        targets=len(Z),
        size=result.size,
        guaranteed=met,
        rounds=round_number,
        best_round=used,
    )
    return result


__all__ = [
    "KTuple",
    "DEFAULT_MATCHING_ROUNDS",
    "DirectedKGraph",
    "ExplicitKGraph",
    "CompleteKGraph",
    "ColorPathFamily",
    "AbsorbingPathTarget",
    "DirectedKGraphCollection",
    "HypothesisReport",
    "TransversalMatchingResult",
    "check_matching_hypotheses",
    "random_transversal_matching",
]
