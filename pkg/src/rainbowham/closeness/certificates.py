"""
Non-Hamiltonicity Certificates
==============================

Two finite arguments rule out a rainbow Hamilton cycle, and each is
packaged as a certificate that ``verify_certificate`` re-derives from the
collection alone.

Parity certificate (n colors): a bipartition (A, B) with both parts
nonempty and a tag per color. A type1 color has no edge across (A, B); a
type2 color has no edge inside A or inside B. A rainbow Hamilton cycle
uses one edge of each color, so it crosses (A, B) exactly b times, b the
number of type2 colors. Any cycle through both parts crosses an even,
nonzero number of times, so b odd or b = 0 is impossible.

Independent-set certificate: a set A independent in every color. A
Hamilton cycle on n vertices holds at most floor(n/2) pairwise
non-consecutive vertices, a Hamilton path at most ceil(n/2).

Documents:

    {"version": 1, "kind": "parity", "A": [...], "B": [...],
     "type_of": ["type1", "type2", ...], "crossing_count": b}
    {"version": 1, "kind": "independent_set", "A": [...], "target": "cycle"}
"""

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Annotated, Any, Dict, Iterable, List, Literal, Optional, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, StrictInt, TypeAdapter
from pydantic import ValidationError as PydanticValidationError

from ..constructions.families import Bipartition
from ..core.collection import GraphCollection, VertexSet, bits, full_mask, mask_of
from ..core.exceptions import CertificateFormatError, InvalidInputError
from ..core.structured_logger import get_logger
from ..core.types import Target

logger = get_logger("closeness.certificates")


class EdgeType(str, Enum):
    """Tag of a color relative to a bipartition"""

    TYPE1 = "type1"
    TYPE2 = "type2"

    def __str__(self) -> str:
        return self.value


# =============================================================================
# CERTIFICATES
# =============================================================================


@dataclass(frozen=True)
class ParityCertificate:
    A: VertexSet
    B: VertexSet
    type_of: Tuple[EdgeType, ...]
    crossing_count: int

    @property
    def target(self) -> Target:
        return Target.CYCLE

    def to_dict(self) -> Dict[str, Any]:
        return {
            "version": 1,
            "kind": "parity",
            "A": sorted(self.A),
            "B": sorted(self.B),
            "type_of": [t.value for t in self.type_of],
            "crossing_count": self.crossing_count,
        }


@dataclass(frozen=True)
class IndependentSetCertificate:
    A: VertexSet
    target: Target

    def to_dict(self) -> Dict[str, Any]:
        return {"version": 1, "kind": "independent_set", "A": sorted(self.A), "target": self.target.value}


Certificate = Union[ParityCertificate, IndependentSetCertificate]


@dataclass(frozen=True)
class CertificateCheck:
    """Result of ``verify_certificate``; ``invariant`` names the first failed check"""

    ok: bool
    invariant: str = "ok"
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "invariant": self.invariant, "detail": self.detail}


def _fail(invariant: str, detail: str) -> CertificateCheck:
    return CertificateCheck(False, invariant, detail)


def independence_threshold(n: int, target: Target) -> int:
    """Smallest |A| that rules out the target: floor(n/2)+1 for cycles, ceil(n/2)+1 for paths"""
    return n // 2 + 1 if Target(target) == Target.CYCLE else (n + 1) // 2 + 1


# =============================================================================
# PARITY
# =============================================================================


def _color_types(g: GraphCollection, a: int, b: int) -> Optional[List[Optional[EdgeType]]]:
    """Forced tag per color (None for colors without edges), or None if some color is mixed"""
    types: List[Optional[EdgeType]] = []
    for c in range(g.colors):
        inside = g.internal_edges(c, a) + g.internal_edges(c, b)
        total = g.edge_total(c)
        if total == 0:
            types.append(None)
        elif inside == total:
            types.append(EdgeType.TYPE1)
        elif inside == 0:
            types.append(EdgeType.TYPE2)
        else:
            return None
    return types


def _certify(g: GraphCollection, part: Bipartition) -> Optional[ParityCertificate]:
    if not part.A or not part.B:
        return None
    forced = _color_types(g, mask_of(part.A), mask_of(part.B))
    if forced is None:
        return None
    crossing = sum(1 for t in forced if t == EdgeType.TYPE2)
    free = [c for c, t in enumerate(forced) if t is None]
    types = [t or EdgeType.TYPE1 for t in forced]
    if crossing % 2 == 0 and crossing > 0:
        if not free:
            return None
        # A color without edges may be tagged either way.
        types[free[0]] = EdgeType.TYPE2
        crossing += 1
    return ParityCertificate(part.A, part.B, tuple(types), crossing)


def _normalized(n: int, part: Iterable[int]) -> Optional[Bipartition]:
    side = frozenset(part)
    if not side or len(side) == n:
        return None
    if 0 not in side:
        side = frozenset(range(n)) - side
    return Bipartition.from_part(n, side)


def candidate_partitions(g: GraphCollection) -> List[Bipartition]:
    """
    Candidate bipartitions in search order: the planted partition, then
    for each color the split off by each connected component and the
    sides of a connected bipartite color. Duplicates are dropped.
    """
    n = g.n
    raw: List[Iterable[int]] = []
    planted = g.planted_partition()
    if planted is not None:
        raw.append(planted)
    seen_graphs = set()
    for c in range(g.colors):
        if g.signature(c) in seen_graphs:
            continue
        seen_graphs.add(g.signature(c))
        graph = g.to_networkx(c)
        components = list(nx.connected_components(graph))
        if len(components) > 1:
            raw.extend(components)
        elif nx.is_bipartite(graph):
            left, _right = nx.bipartite.sets(graph)
            raw.append(left)

    result, seen = [], set()
    for part in raw:
        normalized = _normalized(n, part)
        if normalized is not None and normalized.A not in seen:
            seen.add(normalized.A)
            result.append(normalized)
    return result


def parity_certificate(
    g: GraphCollection, partition: Optional[Bipartition] = None
) -> Optional[ParityCertificate]:
    """
    Parity certificate for ``g`` on the given partition, or on the first
    candidate partition that yields one.

    Raises:
        InvalidInputError: if the color count differs from n, or the given
            partition does not split the vertex set of ``g``
    """
    if g.colors != g.n:
        raise InvalidInputError(f"parity certificates need n = {g.n} colors, got {g.colors}")
    if partition is not None:
        covered = mask_of(partition.A) | mask_of(partition.B)
        if any(not 0 <= v < g.n for v in partition.A | partition.B) or covered != full_mask(g.n):
            raise InvalidInputError(
                f"partition {sorted(partition.A)} | {sorted(partition.B)} does not cover 0..{g.n - 1}"
            )
    candidates = [partition] if partition is not None else candidate_partitions(g)
    for part in candidates:
        certificate = _certify(g, part)
        if certificate is not None:
            logger.debug("Parity certificate found", b=certificate.crossing_count, part=sorted(part.A))
            return certificate
    return None


# =============================================================================
# INDEPENDENT SETS
# =============================================================================


def _independent(g: GraphCollection, mask: int) -> bool:
    union = g.union_rows()
    return all(not (union[v] & mask) for v in bits(mask))


def independent_set_certificate(
    g: GraphCollection, A: Iterable[int], target: Target = Target.CYCLE
) -> Optional[IndependentSetCertificate]:
    """Certificate iff A is independent in every color and large enough for ``target``"""
    target = Target(target)
    part = frozenset(A)
    if any(not 0 <= v < g.n for v in part):
        raise InvalidInputError(f"set {sorted(part)} is not inside 0..{g.n - 1}")
    if len(part) < independence_threshold(g.n, target) or not _independent(g, mask_of(part)):
        return None
    return IndependentSetCertificate(part, target)


def find_independent_set_certificate(
    g: GraphCollection, target: Target = Target.CYCLE
) -> Optional[IndependentSetCertificate]:
    """Certificate from a maximum independent set of the union graph, when one is large enough"""
    clique, _size = nx.max_weight_clique(nx.complement(g.union_graph()), weight=None)
    return independent_set_certificate(g, clique, target)


# =============================================================================
# VERIFICATION
# =============================================================================


def _verify_parity(g: GraphCollection, cert: ParityCertificate) -> CertificateCheck:
    n = g.n
    if g.colors != n:
        return _fail("color_count", f"parity arguments need n = {n} colors, got {g.colors}")
    if len(cert.type_of) != g.colors:
        return _fail("type_count", f"{len(cert.type_of)} tags for {g.colors} colors")
    a, b = mask_of(cert.A), mask_of(cert.B)
    if any(not 0 <= v < n for v in cert.A | cert.B):
        return _fail("vertex_range", "partition names a vertex outside the collection")
    if a & b or (a | b) != full_mask(n):
        return _fail("partition", "A and B must be disjoint and cover every vertex")
    if not a or not b:
        return _fail("nonempty_parts", "both parts must be nonempty")
    for c, tag in enumerate(cert.type_of):
        inside = g.internal_edges(c, a) + g.internal_edges(c, b)
        total = g.edge_total(c)
        if tag == EdgeType.TYPE1 and inside != total:
            return _fail("type1_color_crosses", f"color {c} has {total - inside} crossing edges")
        if tag == EdgeType.TYPE2 and inside:
            return _fail("type2_color_internal", f"color {c} has {inside} internal edges")
    b_count = sum(1 for t in cert.type_of if t == EdgeType.TYPE2)
    if cert.crossing_count != b_count:
        return _fail("crossing_count", f"recorded {cert.crossing_count}, tags give {b_count}")
    if b_count % 2 == 0 and b_count != 0:
        return _fail("crossing_parity", f"b = {b_count} is even and nonzero")
    return CertificateCheck(True)


def _verify_independent(g: GraphCollection, cert: IndependentSetCertificate) -> CertificateCheck:
    if any(not 0 <= v < g.n for v in cert.A):
        return _fail("vertex_range", "set names a vertex outside the collection")
    needed = independence_threshold(g.n, cert.target)
    if len(cert.A) < needed:
        return _fail("set_size", f"|A| = {len(cert.A)} but {cert.target} needs {needed}")
    union = g.union_rows()
    mask = mask_of(cert.A)
    for v in sorted(cert.A):
        if union[v] & mask:
            return _fail("independence", f"vertex {v} has a neighbour inside A")
    return CertificateCheck(True)


def verify_certificate(g: GraphCollection, cert: Certificate) -> CertificateCheck:
    """Re-check every invariant of ``cert`` against ``g``; never raises on bad certificates"""
    if isinstance(cert, ParityCertificate):
        return _verify_parity(g, cert)
    return _verify_independent(g, cert)


# =============================================================================
# DOCUMENTS
# =============================================================================


class ParityDocument(BaseModel):
    version: Literal[1] = 1
    kind: Literal["parity"]
    A: List[StrictInt]
    B: List[StrictInt]
    type_of: List[EdgeType]
    crossing_count: StrictInt

    model_config = ConfigDict(extra="forbid")


class IndependentSetDocument(BaseModel):
    version: Literal[1] = 1
    kind: Literal["independent_set"]
    A: List[StrictInt]
    target: Target

    model_config = ConfigDict(extra="forbid")


CertificateDocument = TypeAdapter(
    Annotated[Union[ParityDocument, IndependentSetDocument], Field(discriminator="kind")]
)


def dump_certificate(cert: Certificate) -> str:
    return json.dumps(cert.to_dict(), sort_keys=True)


def parse_certificate(text: str) -> Certificate:
    """
    Parse a certificate document. Only the document shape is checked here;
    semantic invariants are left to ``verify_certificate``.

    Raises:
        CertificateFormatError: on malformed JSON or documents
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        doc = CertificateDocument.validate_python(raw)
    except PydanticValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "<document>"
        raise CertificateFormatError(f"{where}: {first['msg']}") from exc
    if isinstance(doc, ParityDocument):
        return ParityCertificate(frozenset(doc.A), frozenset(doc.B), tuple(doc.type_of), doc.crossing_count)
    return IndependentSetCertificate(frozenset(doc.A), doc.target)


def load_certificate(path: Union[str, Path]) -> Certificate:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CertificateFormatError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_certificate(text)


def save_certificate(cert: Certificate, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_certificate(cert) + "\n", encoding="utf-8")


__all__ = [
    "EdgeType",
    "ParityCertificate",
    "IndependentSetCertificate",
    "Certificate",
    "CertificateCheck",
    "independence_threshold",
    "candidate_partitions",
    "parity_certificate",
    "independent_set_certificate",
    "find_independent_set_certificate",
    "verify_certificate",
    "dump_certificate",
    "parse_certificate",
    "load_certificate",
    "save_certificate",
]
