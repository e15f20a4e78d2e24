"""
Absorbing Paths
===============

A rainbow path P = v1 v2 v3 v4 avoiding the anchors v and u is a
c-absorbing path of (v, u) when c ∈ L(v2 v) and col(v2 v3) ∈ L(v3 u).
If P is a segment of a rainbow cycle that misses v and color c, then v
can be inserted between v2 and v3 (v2-v in color c, v-v3 in the old
color of v2 v3); a rainbow path from v to u is inserted the same way.
"""

import random
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from ..core.collection import (
    ColorSet,
    GraphCollection,
    TransversalSubgraph,
    VertexSet,
    bits,
    cycle_from_sequence,
    validate,
    walk_sequence,
)
from ..core.exceptions import InvalidInputError, PreconditionError
from ..core.structured_logger import get_logger
from ..core.types import SubgraphKind

logger = get_logger("absorption.paths")

ENUMERATION_EXHAUSTIVE_MAX_N = 30
ENUMERATION_SAMPLES = 5000


@dataclass(frozen=True)
class AbsorbingPathRecord:
    """A c-absorbing path of (v, u); ``colors`` are the colors of v1v2, v2v3, v3v4"""

    vertices: Tuple[int, int, int, int]
    colors: Tuple[int, int, int]
    absorbed_color: int
    anchor: Tuple[int, int]

    @property
    def path(self) -> TransversalSubgraph:
        v = self.vertices
        return TransversalSubgraph(
            tuple((v[i], v[i + 1], self.colors[i]) for i in range(3)), SubgraphKind.PATH
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "colors": list(self.colors),
            "absorbed_color": self.absorbed_color,
            "anchor": list(self.anchor),
        }


def record_violations(g: GraphCollection, record: AbsorbingPathRecord) -> List[str]:
    """Names of the conditions ``record`` fails in ``g`` (empty when it is a valid absorbing path)"""
    failures = []
    v, u = record.anchor
    c = record.absorbed_color
    if not (0 <= v < g.n and 0 <= u < g.n) or not 0 <= c < g.colors:
        return ["out_of_range"]
    if not validate(g, record.path):
        failures.append("path")
    if v in record.vertices or u in record.vertices:
        failures.append("anchor_on_path")
    if c in record.colors:
        failures.append("absorbed_color_on_path")
    v2, v3 = record.vertices[1], record.vertices[2]
    if "path" not in failures:
        if v == v2 or not g.has_edge(c, v2, v):
            failures.append("absorbed_edge")
        if u == v3 or not g.has_edge(record.colors[1], v3, u):
            failures.append("return_edge")
    return failures


# =============================================================================
# ENUMERATION
# =============================================================================


def _check_request(
    g: GraphCollection, c: int, v: int, u: int, forbidden_vertices: VertexSet, forbidden_colors: ColorSet
) -> None:
    if not (0 <= v < g.n and 0 <= u < g.n):
        raise InvalidInputError(f"anchor ({v}, {u}) out of range for n = {g.n}")
    if not 0 <= c < g.colors:
        raise InvalidInputError(f"color {c} out of range for {g.colors} colors")
    if v in forbidden_vertices or u in forbidden_vertices:
        raise PreconditionError(f"anchor ({v}, {u}) is forbidden")
    if c in forbidden_colors:
        raise PreconditionError(f"absorbed color {c} is forbidden")


def _color_mask(g: GraphCollection, x: int, y: int, banned: int) -> int:
    mask = 0
    for color in range(g.colors):
        if not (banned >> color) & 1 and (g.rows[color][x] >> y) & 1:
            mask |= 1 << color
    return mask


def enumerate_absorbing_paths(
    g: GraphCollection,
    c: int,
    v: int,
    u: int,
    forbidden_vertices: VertexSet = frozenset(),
    forbidden_colors: ColorSet = frozenset(),
    exhaustive_max_n: int = ENUMERATION_EXHAUSTIVE_MAX_N,
    samples: int = ENUMERATION_SAMPLES,
    seed: int = 0,
    limit: Optional[int] = None,
) -> List[AbsorbingPathRecord]:
    """
    c-absorbing paths of (v, u) whose vertices avoid ``forbidden_vertices``
    and {v, u} and whose colors avoid ``forbidden_colors`` and {c}.

    Up to ``exhaustive_max_n`` vertices every such path (in both
    directions, with every admissible color assignment) is listed. Above
    it, ``samples`` random middle edges are drawn and all completions of
    the ones that qualify are listed, so the result is a subset.
    ``limit`` stops the listing early.

    Raises:
        InvalidInputError: on out-of-range arguments
        PreconditionError: if an anchor or ``c`` is forbidden
    """
    _check_request(g, c, v, u, forbidden_vertices, forbidden_colors)
    blocked = (1 << v) | (1 << u)
    for w in forbidden_vertices:
        blocked |= 1 << w
    banned = 1 << c
    for color in forbidden_colors:
        banned |= 1 << color
    rows = g.rows
    union = g.union_rows()
    free = ~blocked

    records: List[AbsorbingPathRecord] = []

    def complete(v2: int, v3: int) -> bool:
        """Append every record with middle edge v2 v3; False once ``limit`` is reached"""
        for c23 in bits(_color_mask(g, v2, v3, banned) & _color_mask(g, v3, u, banned)):
            for v1 in bits(union[v2] & free & ~(1 << v3)):
                for c12 in bits(_color_mask(g, v1, v2, banned | (1 << c23))):
                    used = banned | (1 << c23) | (1 << c12)
                    for v4 in bits(union[v3] & free & ~((1 << v1) | (1 << v2))):
                        for c34 in bits(_color_mask(g, v3, v4, used)):
                            records.append(
                                AbsorbingPathRecord((v1, v2, v3, v4), (c12, c23, c34), c, (v, u))
                            )
                            if limit is not None and len(records) >= limit:
                                return False
        return True

    starts = rows[c][v] & free
    if g.n <= exhaustive_max_n:
        done = False
        for v2 in bits(starts):
            for v3 in bits(union[v2] & union[u] & free):
                if not complete(v2, v3):
                    done = True
                    break
            if done:
                break
    else:
        rng = random.Random(seed)
        candidates = list(bits(starts))
        tried = set()
        for _ in range(samples if candidates else 0):
            v2 = rng.choice(candidates)
            middle = list(bits(union[v2] & union[u] & free))
            if not middle:
                continue
            v3 = rng.choice(middle)
            if (v2, v3) in tried:
                continue
            tried.add((v2, v3))
            if not complete(v2, v3):
                break
        logger.debug("Sampled absorbing paths", n=g.n, middle_edges=len(tried), records=len(records))
    return records


# =============================================================================
# INSERTION
# =============================================================================


def _reverse_walk(vertices: List[int], colors: List[int]) -> Tuple[List[int], List[int]]:
    return [vertices[0]] + vertices[:0:-1], colors[::-1]


def _segment_at(
    vertices: List[int], colors: List[int], record: AbsorbingPathRecord
) -> Optional[int]:
    """Index i such that the cycle walks v1 v2 v3 v4 from position i with the record's colors"""
    k = len(vertices)
    for i in range(k):
        if all(vertices[(i + j) % k] == record.vertices[j] for j in range(4)) and all(
            colors[(i + j) % k] == record.colors[j] for j in range(3)
        ):
            return i
    return None


def _oriented_walk(
    cycle: TransversalSubgraph, record: AbsorbingPathRecord
) -> Tuple[List[int], List[int], int]:
    vertices, colors = walk_sequence(cycle)
    at = _segment_at(vertices, colors, record)
    if at is None:
        vertices, colors = _reverse_walk(vertices, colors)
        at = _segment_at(vertices, colors, record)
    if at is None:
        raise PreconditionError(
            "absorbing path is not a segment of the cycle", details=record.to_dict()
        )
    return vertices, colors, at


def _check_cycle_and_record(g: GraphCollection, cycle: TransversalSubgraph, record: AbsorbingPathRecord) -> None:
    if cycle.kind != SubgraphKind.CYCLE:
        raise PreconditionError(f"expected a cycle, got a {cycle.kind}")
    check = validate(g, cycle)
    if not check:
        raise PreconditionError(f"cycle does not validate: {check.reason}", details={"detail": check.detail})
    failures = record_violations(g, record)
    if failures:
        raise PreconditionError("record is not an absorbing path", details={"failed": failures})
    if record.absorbed_color in cycle.colors():
        raise PreconditionError(f"absorbed color {record.absorbed_color} is already on the cycle")


def _splice(
    g: GraphCollection,
    cycle: TransversalSubgraph,
    record: AbsorbingPathRecord,
    inserted: List[int],
    inserted_colors: List[int],
) -> TransversalSubgraph:
    vertices, colors, at = _oriented_walk(cycle, record)
    k = len(vertices)
    # Rotate so that v2 sits at the end and v3 at the front.
    cut = (at + 2) % k
    vertices = vertices[cut:] + vertices[:cut]
    colors = colors[cut:] + colors[:cut]
    c23 = colors[-1]
    new_vertices = vertices + inserted
    new_colors = colors[:-1] + [record.absorbed_color] + inserted_colors + [c23]
    result = cycle_from_sequence(new_vertices, new_colors)

    check = validate(g, result)
    assert check, f"splice produced an invalid cycle: {check.reason}"
    assert result.vertices() == cycle.vertices() | set(inserted)
    assert result.colors() == cycle.colors() | {record.absorbed_color} | set(inserted_colors)
    return result


def absorb_vertex(
    g: GraphCollection, cycle: TransversalSubgraph, record: AbsorbingPathRecord
) -> TransversalSubgraph:
    """
    Insert the anchor v between v2 and v3.

    Raises:
        PreconditionError: if the anchors differ, the record's path is not
            a segment of ``cycle``, v is on the cycle or the absorbed color
            is already used
    """
    v, u = record.anchor
    if v != u:
        raise PreconditionError(f"vertex absorption needs v == u, got ({v}, {u})")
    _check_cycle_and_record(g, cycle, record)
    if v in cycle.vertices():
        raise PreconditionError(f"vertex {v} is already on the cycle")
    result = _splice(g, cycle, record, [v], [])
    logger.debug("Absorbed vertex", vertex=v, color=record.absorbed_color, length=len(result))
    return result


def absorb_path(
    g: GraphCollection,
    cycle: TransversalSubgraph,
    record: AbsorbingPathRecord,
    p: TransversalSubgraph,
) -> TransversalSubgraph:
    """
    Insert the rainbow path ``p`` from v to u between v2 and v3.

    A path without edges stands for the single vertex v = u.

    Raises:
        PreconditionError: if ``p`` is not a valid path with the record's
            anchors as ends, meets the cycle, or the colors of ``p``, the
            absorbed color and the cycle are not pairwise disjoint
    """
    v, u = record.anchor
    if not p.edges:
        return absorb_vertex(g, cycle, record)
    if p.kind != SubgraphKind.PATH:
        raise PreconditionError(f"expected a path, got a {p.kind}")
    check = validate(g, p)
    if not check:
        raise PreconditionError(f"path does not validate: {check.reason}", details={"detail": check.detail})
    _check_cycle_and_record(g, cycle, record)

    path_vertices, path_colors = walk_sequence(p)
    if path_vertices[0] != v:
        path_vertices, path_colors = path_vertices[::-1], path_colors[::-1]
    if (path_vertices[0], path_vertices[-1]) != (v, u):
        raise PreconditionError(
            f"path ends {path_vertices[0]}, {path_vertices[-1]} do not match the anchors ({v}, {u})"
        )
    if p.vertices() & cycle.vertices():
        raise PreconditionError("path meets the cycle", details={"shared": sorted(p.vertices() & cycle.vertices())})
    if p.colors() & cycle.colors() or record.absorbed_color in p.colors():
        raise PreconditionError("path colors clash with the cycle or the absorbed color")

    result = _splice(g, cycle, record, path_vertices, path_colors)
    logger.debug("Absorbed path", ends=[v, u], added=len(path_vertices), length=len(result))
    return result


__all__ = [
    "ENUMERATION_EXHAUSTIVE_MAX_N",
    "ENUMERATION_SAMPLES",
    "AbsorbingPathRecord",
    "record_violations",
    "enumerate_absorbing_paths",
    "absorb_vertex",
    "absorb_path",
]
