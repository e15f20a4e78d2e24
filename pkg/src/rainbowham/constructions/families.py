"""
Extremal Families
=================

Generators for the named extremal collections:

- EC1: two disjoint near-equal cliques
- EC2: the complete near-balanced bipartite graph
- H_a^b: a copies of EC1 followed by b copies of EC2 on one shared
  equitable partition
- half-split collections: a part A of size floor(n/2)+1 that is
  independent and completely joined to its complement

Vertices 0..ceil(n/2)-1 always form the larger part, so tests can refer to
parts by index. Every generator records its provenance in ``meta``.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from ..core.collection import GraphCollection, VertexSet, full_mask, mask_of
from ..core.exceptions import InvalidInputError
from ..core.types import BInternal, Pattern


@dataclass(frozen=True)
class Bipartition:
    """
    A split of {0, ..., n-1} into two parts.

    ``A`` and ``B`` are disjoint and cover the vertex set; when
    ``equitable`` is set their sizes differ by at most one.
    """

    A: VertexSet
    B: VertexSet
    equitable: bool = False

    def __post_init__(self) -> None:
        if self.A & self.B:
            raise InvalidInputError("bipartition parts overlap")
        if self.equitable and abs(len(self.A) - len(self.B)) > 1:
            raise InvalidInputError(
                f"parts of sizes {len(self.A)} and {len(self.B)} are not equitable"
            )

    @classmethod
    def from_part(cls, n: int, A: Iterable[int], equitable: bool = False) -> "Bipartition":
        part = frozenset(A)
        if any(not 0 <= v < n for v in part):
            raise InvalidInputError(f"part {sorted(part)} is not inside 0..{n - 1}")
        return cls(part, frozenset(range(n)) - part, equitable)

    @property
    def n(self) -> int:
        return len(self.A) + len(self.B)

    def swapped(self) -> "Bipartition":
        return Bipartition(self.B, self.A, self.equitable)


def canonical_bipartition(n: int) -> Bipartition:
    """Equitable partition with A = {0, ..., ceil(n/2) - 1}"""
    return Bipartition.from_part(n, range((n + 1) // 2), equitable=True)


def pattern_rows(n: int, pattern: Pattern, part: Iterable[int]) -> Tuple[int, ...]:
    """Adjacency rows of the EC1 (cliques on both parts) or EC2 (complete
    bipartite) graph on the partition (part, complement)"""
    a = mask_of(part)
    b = full_mask(n) & ~a
    rows = []
    for v in range(n):
        own, other = (a, b) if (a >> v) & 1 else (b, a)
        rows.append((own & ~(1 << v)) if pattern == Pattern.EC1 else other)
    return tuple(rows)


def _require_n(n: int, minimum: int, name: str) -> None:
    if n < minimum:
        raise InvalidInputError(f"{name} needs n >= {minimum}, got {n}")


def make_two_cliques(n: int) -> GraphCollection:
    """Single-color EC1: cliques on {0..ceil(n/2)-1} and the rest"""
    _require_n(n, 2, "make_two_cliques")
    part = canonical_bipartition(n)
    return GraphCollection(
        n,
        (pattern_rows(n, Pattern.EC1, part.A),),
        {"family": "two_cliques", "params": {"n": n}, "planted_partition": sorted(part.A)},
    )


def make_balanced_bipartite(n: int) -> GraphCollection:
    """Single-color EC2: complete bipartite with parts of sizes ceil(n/2), floor(n/2)"""
    _require_n(n, 2, "make_balanced_bipartite")
    part = canonical_bipartition(n)
    return GraphCollection(
        n,
        (pattern_rows(n, Pattern.EC2, part.A),),
        {"family": "balanced_bipartite", "params": {"n": n}, "planted_partition": sorted(part.A)},
    )


def make_H(n: int, a: int, b: int) -> GraphCollection:
    """
    The collection H_a^b: colors 0..a-1 are EC1 copies, colors a..a+b-1
    are EC2 copies, all on the canonical equitable partition.

    Args:
        n: number of vertices (>= 2)
        a: number of EC1 copies
        b: number of EC2 copies

    Raises:
        InvalidInputError: on negative counts or a + b = 0
    """
    _require_n(n, 2, "make_H")
    if a < 0 or b < 0:
        raise InvalidInputError(f"make_H needs a, b >= 0, got a = {a}, b = {b}")
    if a + b == 0:
        raise InvalidInputError("make_H needs at least one color")
    part = canonical_bipartition(n)
    ec1 = pattern_rows(n, Pattern.EC1, part.A)
    ec2 = pattern_rows(n, Pattern.EC2, part.A)
    return GraphCollection(
        n,
        (ec1,) * a + (ec2,) * b,
        {
            "family": "H",
            "params": {"n": n, "a": a, "b": b},
            "planted_partition": sorted(part.A),
            "patterns": [Pattern.EC1.value] * a + [Pattern.EC2.value] * b,
        },
    )


def make_half_split(
    n: int,
    s: int,
    b_internal: BInternal = BInternal.COMPLETE,
    part_size: Optional[int] = None,
) -> GraphCollection:
    """
    s identical half-split graphs: A = {0, ..., |A|-1} independent, every
    A-to-complement pair an edge, and the complement complete or empty.

    ``part_size`` defaults to floor(n/2) + 1; at odd n the path variant
    uses ceil(n/2) + 1.
    """
    _require_n(n, 3, "make_half_split")
    if s < 1:
        raise InvalidInputError(f"make_half_split needs s >= 1, got {s}")
    size = n // 2 + 1 if part_size is None else part_size
    if not 1 <= size < n:
        raise InvalidInputError(f"part size must lie in [1, {n - 1}], got {size}")
    b_internal = BInternal(b_internal)

    a_mask = (1 << size) - 1
    b_mask = full_mask(n) & ~a_mask
    rows = []
    for v in range(n):
        if (a_mask >> v) & 1:
            rows.append(b_mask)
        elif b_internal == BInternal.COMPLETE:
            rows.append(full_mask(n) & ~(1 << v))
        else:
            rows.append(a_mask)
    graph = tuple(rows)
    return GraphCollection(
        n,
        (graph,) * s,
        {
            "family": "half_split",
            "params": {"n": n, "s": s, "b_internal": b_internal.value, "part_size": size},
            "independent_set": list(range(size)),
        },
    )


def make_pattern_collection(
    n: int, colors: Sequence[Tuple[Pattern, Iterable[int]]]
) -> GraphCollection:
    """
    One color per (pattern, part) entry, each an EC1 or EC2 graph on its own
    partition (part, complement). Used for crossing and weakly stable
    fixtures where colors disagree on the partition.
    """
    rows = []
    parts: List[List[int]] = []
    for pattern, part in colors:
        members = sorted(set(part))
        rows.append(pattern_rows(n, Pattern(pattern), members))
        parts.append(members)
    return GraphCollection(
        n,
        tuple(rows),
        {
            "family": "pattern",
            "patterns": [Pattern(p).value for p, _ in colors],
            "parts": parts,
        },
    )


def make_ec2_with_smaller_part_edges(
    n: int, extra_edges: Iterable[Tuple[int, int]]
) -> GraphCollection:
    """
    Single-color EC2 at odd n with edges added inside the smaller part.

    The larger part stays independent and holds more than half of the
    vertices, so the graph stays non-Hamiltonian.
    """
    _require_n(n, 3, "make_ec2_with_smaller_part_edges")
    if n % 2 == 0:
        raise InvalidInputError("the smaller part of EC2 is only defined for odd n")
    base = make_balanced_bipartite(n)
    small = mask_of(range((n + 1) // 2, n))
    rows = list(base.rows[0])
    for u, v in extra_edges:
        if not ((small >> u) & 1 and (small >> v) & 1) or u == v:
            raise InvalidInputError(f"({u}, {v}) is not a pair inside the smaller part")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    meta = dict(base.meta)
    meta["family"] = "ec2_smaller_part_edges"
    return GraphCollection(n, (tuple(rows),), meta)


__all__ = [
    "Bipartition",
    "canonical_bipartition",
    "pattern_rows",
    "make_two_cliques",
    "make_balanced_bipartite",
    "make_H",
    "make_half_split",
    "make_pattern_collection",
    "make_ec2_with_smaller_part_edges",
]
