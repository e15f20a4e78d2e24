"""
Graph Collections
=================

The data model every other module consumes: a collection of simple graphs
G_0, ..., G_{s-1} on the common vertex set {0, ..., n-1}, where graph c is
said to carry color c, plus transversal (rainbow) subgraphs of such a
collection.

Adjacency is stored per color as n rows of n-bit words (Python ints), so
neighbourhood intersections and set-restricted degree counts are single
bit operations. Collections are immutable; every "modification" returns a
new collection.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .exceptions import InvalidInputError
from .types import SubgraphKind, ValidationReason

VertexSet = FrozenSet[int]
ColorSet = FrozenSet[int]
Edge = Tuple[int, int]
ColoredEdge = Tuple[int, int, int]

# Vertex sets are accepted either as iterables of indices or as bitmasks.
SetLike = Union[int, Iterable[int]]


# =============================================================================
# BITSET HELPERS
# =============================================================================


def mask_of(vertices: SetLike) -> int:
    """Bitmask with bit v set for every v in ``vertices``"""
    if isinstance(vertices, int):
        return vertices
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of(mask: int) -> VertexSet:
    return frozenset(bits(mask))


def full_mask(n: int) -> int:
    return (1 << n) - 1


# =============================================================================
# COLLECTION
# =============================================================================


@dataclass(frozen=True)
class GraphCollection:
    """
    A collection of graphs on the vertex set {0, ..., n-1}.

    ``rows[c][v]`` is the neighbourhood bitmask of vertex v in G_c. ``meta``
    carries provenance (generator family, parameters, planted partition)
    and is ignored by equality and hashing.
    """

    n: int
    rows: Tuple[Tuple[int, ...], ...]
    meta: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidInputError(f"collection needs n >= 1, got {self.n}")
        if len(self.rows) < 1:
            raise InvalidInputError("collection needs at least one color")
        limit = full_mask(self.n)
        for c, graph_rows in enumerate(self.rows):
            if len(graph_rows) != self.n:
                raise InvalidInputError(
                    f"color {c}: expected {self.n} adjacency rows, got {len(graph_rows)}"
                )
            for v, row in enumerate(graph_rows):
                if row & ~limit:
                    raise InvalidInputError(f"color {c}: vertex {v} has out-of-range neighbours")
                if (row >> v) & 1:
                    raise InvalidInputError(f"color {c}: loop at vertex {v}")
                for w in bits(row):
                    if not (graph_rows[w] >> v) & 1:
                        raise InvalidInputError(f"color {c}: adjacency of {v} and {w} is not symmetric")

    # -------------------------------------------------------------------------
    # Construction
    # -------------------------------------------------------------------------

    @classmethod
    def from_edge_lists(
        cls,
        n: int,
        graphs: Sequence[Iterable[Edge]],
        meta: Optional[Dict[str, Any]] = None,
    ) -> "GraphCollection":
        """Build a collection from one edge list per color"""
        all_rows = []
        for c, edges in enumerate(graphs):
            rows = [0] * n
            for u, v in edges:
                if not (0 <= u < n and 0 <= v < n):
                    raise InvalidInputError(f"color {c}: edge ({u}, {v}) out of range for n = {n}")
                if u == v:
                    raise InvalidInputError(f"color {c}: loop at vertex {u}")
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            all_rows.append(tuple(rows))
        return cls(n, tuple(all_rows), dict(meta or {}))

    @classmethod
    def from_rows(
        cls,
        n: int,
        rows: Sequence[Sequence[int]],
        meta: Optional[Dict[str, Any]] = None,
    ) -> "GraphCollection":
        return cls(n, tuple(tuple(r) for r in rows), dict(meta or {}))

    # -------------------------------------------------------------------------
    # Queries
    # -------------------------------------------------------------------------

    @property
    def colors(self) -> int:
        return len(self.rows)

    def has_edge(self, c: int, u: int, v: int) -> bool:
        return bool((self.rows[c][u] >> v) & 1)

    def neighbors(self, c: int, v: int) -> int:
        """Neighbourhood bitmask of v in G_c"""
        return self.rows[c][v]

    def degree(self, c: int, v: int) -> int:
        return self.rows[c][v].bit_count()

    def edges(self, c: int) -> Iterator[Edge]:
        """Edges of G_c, each once with u < v"""
        for u, row in enumerate(self.rows[c]):
            for v in bits(row >> (u + 1)):
                yield u, u + 1 + v

    def edge_total(self, c: int) -> int:
        return sum(row.bit_count() for row in self.rows[c]) // 2

    def internal_edges(self, c: int, mask: int) -> int:
        """Number of edges of G_c with both endpoints in ``mask``"""
        graph_rows = self.rows[c]
        return sum((graph_rows[v] & mask).bit_count() for v in bits(mask)) // 2

    def union_rows(self) -> Tuple[int, ...]:
        """Adjacency rows of the union of all colors"""
        union = [0] * self.n
        for graph_rows in self.rows:
            for v, row in enumerate(graph_rows):
                union[v] |= row
        return tuple(union)

    def planted_partition(self) -> Optional[VertexSet]:
        """Part A of the partition a generator planted, when known"""
        planted = self.meta.get("planted_partition")
        if planted is None:
            return None
        return frozenset(int(v) for v in planted)

    # -------------------------------------------------------------------------
    # Derived collections
    # -------------------------------------------------------------------------

    def restrict_colors(self, colors: Iterable[int]) -> "GraphCollection":
        """Sub-collection of the given colors, renumbered in the given order"""
        chosen = list(colors)
        return GraphCollection(self.n, tuple(self.rows[c] for c in chosen), dict(self.meta))

    def with_color(self, rows: Sequence[int]) -> "GraphCollection":
        """Collection with one more color appended at index ``self.colors``"""
        return GraphCollection(self.n, self.rows + (tuple(rows),), dict(self.meta))

    def with_toggles(self, toggles: Iterable[ColoredEdge]) -> "GraphCollection":
        """Collection with each color-edge (u, v, c) flipped"""
        rows = [list(r) for r in self.rows]
        for u, v, c in toggles:
            rows[c][u] ^= 1 << v
            rows[c][v] ^= 1 << u
        meta = dict(self.meta)
        return GraphCollection(self.n, tuple(tuple(r) for r in rows), meta)

    def to_networkx(self, c: int) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges(c))
        return graph

    def union_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for u, row in enumerate(self.union_rows()):
            graph.add_edges_from((u, v) for v in bits(row) if v > u)
        return graph

    def signature(self, c: int) -> Tuple[int, ...]:
        """Hashable identity of G_c; equal signatures mean identical graphs"""
        return self.rows[c]


def complete_rows(n: int) -> Tuple[int, ...]:
    """Adjacency rows of K_n"""
    everything = full_mask(n)
    return tuple(everything & ~(1 << v) for v in range(n))


# =============================================================================
# BASIC QUERIES
# =============================================================================


def min_degree(g: GraphCollection) -> int:
    """Minimum over colors and vertices of the degree"""
    return min(row.bit_count() for graph_rows in g.rows for row in graph_rows)


def color_list(g: GraphCollection, u: int, v: int) -> ColorSet:
    """L(uv): the colors whose graph contains the edge uv"""
    if u == v:
        raise InvalidInputError(f"color_list is undefined for a loop at vertex {u}")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise InvalidInputError(f"vertex pair ({u}, {v}) out of range for n = {g.n}")
    return frozenset(c for c in range(g.colors) if (g.rows[c][u] >> v) & 1)


def edge_count(g: GraphCollection, c: int, X: SetLike, Y: SetLike) -> int:
    """
    |E_{G_c}(X, Y)|: edges with one endpoint in X and the other in Y.

    Edges inside X ∩ Y are counted once, which makes the count equal to
    e(X ∪ Y) - e(X \\ Y) - e(Y \\ X) in terms of internal edge counts.
    """
    x, y = mask_of(X), mask_of(Y)
    return g.internal_edges(c, x | y) - g.internal_edges(c, x & ~y) - g.internal_edges(c, y & ~x)


def collection_edge_count(g: GraphCollection, C: Iterable[int], X: SetLike, Y: SetLike) -> int:
    """Sum of ``edge_count`` over the colors in C"""
    x, y = mask_of(X), mask_of(Y)
    return sum(edge_count(g, c, x, y) for c in C)


# =============================================================================
# TRANSVERSAL SUBGRAPHS
# =============================================================================


@dataclass(frozen=True)
class TransversalSubgraph:
    """
    Colored edges (u, v, c) of a candidate rainbow subgraph.

    Cycles and paths are stored in walk order: consecutive edges share an
    endpoint, and for a cycle the last edge returns to the first vertex.
    """

    edges: Tuple[ColoredEdge, ...]
    kind: SubgraphKind = SubgraphKind.GENERIC

    def vertices(self) -> VertexSet:
        return frozenset(x for u, v, _ in self.edges for x in (u, v))

    def colors(self) -> ColorSet:
        return frozenset(c for _, _, c in self.edges)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class ValidationResult:
    """Result of ``validate``; truthy iff the subgraph is valid"""

    ok: bool
    reason: ValidationReason
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _fail(reason: ValidationReason, detail: str) -> ValidationResult:
    return ValidationResult(False, reason, detail)


def validate(g: GraphCollection, t: TransversalSubgraph) -> ValidationResult:
    """Check rainbowness, edge presence and the kind-specific shape of ``t``"""
    if not t.edges and t.kind in (SubgraphKind.CYCLE, SubgraphKind.PATH):
        return _fail(ValidationReason.EMPTY, f"a {t.kind} needs at least one edge")

    seen_colors = set()
    for u, v, c in t.edges:
        if not (0 <= u < g.n and 0 <= v < g.n):
            return _fail(ValidationReason.VERTEX_OUT_OF_RANGE, f"edge ({u}, {v}, {c})")
        if not 0 <= c < g.colors:
            return _fail(ValidationReason.COLOR_OUT_OF_RANGE, f"edge ({u}, {v}, {c})")
        if u == v:
            return _fail(ValidationReason.LOOP, f"edge ({u}, {v}, {c})")
        if c in seen_colors:
            return _fail(ValidationReason.REPEATED_COLOR, f"color {c} used twice")
        seen_colors.add(c)
        if not g.has_edge(c, u, v):
            return _fail(ValidationReason.MISSING_EDGE, f"({u}, {v}) is not an edge of color {c}")

    return _check_shape(t)


def _check_shape(t: TransversalSubgraph) -> ValidationResult:
    if t.kind == SubgraphKind.GENERIC:
        return ValidationResult(True, ValidationReason.OK)

    pairs = [frozenset((u, v)) for u, v, _ in t.edges]
    if t.kind == SubgraphKind.MATCHING:
        touched: set = set()
        for pair in pairs:
            if touched & pair:
                return _fail(ValidationReason.NOT_A_MATCHING, f"vertex reused by {sorted(pair)}")
            touched |= pair
        return ValidationResult(True, ValidationReason.OK)

    graph = nx.Graph()
    graph.add_edges_from(tuple(p) for p in pairs)
    simple = graph.number_of_edges() == len(pairs)

    if t.kind == SubgraphKind.CYCLE:
        is_cycle = (
            simple
            and len(pairs) >= 3
            and nx.is_connected(graph)
            and all(d == 2 for _, d in graph.degree())
        )
        if not is_cycle:
            return _fail(ValidationReason.NOT_A_CYCLE, "edges do not form a single cycle")
        return ValidationResult(True, ValidationReason.OK)

    is_path = simple and nx.is_tree(graph) and max(d for _, d in graph.degree()) <= 2
    if not is_path:
        return _fail(ValidationReason.NOT_A_PATH, "edges do not form a single path")
    return ValidationResult(True, ValidationReason.OK)


# =============================================================================
# WALK ORDER
# =============================================================================


def cycle_from_sequence(vertices: Sequence[int], colors: Sequence[int]) -> TransversalSubgraph:
    """Cycle v0 v1 ... v_{k-1} v0 where edge i joins v_i and v_{i+1} with colors[i]"""
    k = len(vertices)
    edges = tuple((vertices[i], vertices[(i + 1) % k], colors[i]) for i in range(k))
    return TransversalSubgraph(edges, SubgraphKind.CYCLE)


def path_from_sequence(vertices: Sequence[int], colors: Sequence[int]) -> TransversalSubgraph:
    """Path v0 v1 ... v_{k-1} where edge i joins v_i and v_{i+1} with colors[i]"""
    edges = tuple((vertices[i], vertices[i + 1], colors[i]) for i in range(len(vertices) - 1))
    return TransversalSubgraph(edges, SubgraphKind.PATH)


def walk_sequence(t: TransversalSubgraph) -> Tuple[List[int], List[int]]:
    """
    Recover (vertices, colors) in walk order from a cycle or path.

    For a cycle the walk starts at the first endpoint of ``t.edges[0]`` and
    leaves along that edge; ``colors[i]`` joins ``vertices[i]`` to the next
    vertex (cyclically). For a path the walk starts at an end vertex.
    """
    incident: Dict[int, List[Tuple[int, int]]] = {}
    for u, v, c in t.edges:
        incident.setdefault(u, []).append((v, c))
        incident.setdefault(v, []).append((u, c))

    if t.kind == SubgraphKind.CYCLE:
        start, second, first_color = t.edges[0]
        vertices, colors = [start], [first_color]
        previous, current = start, second
        while current != start:
            vertices.append(current)
            step = next(
                (w, c) for w, c in incident[current] if not (w == previous and c == colors[-1])
            )
            previous, current = current, step[0]
            colors.append(step[1])
        return vertices, colors

    ends = sorted(v for v, adjacent in incident.items() if len(adjacent) == 1)
    start = ends[0]
    vertices, colors = [start], []
    previous = None
    current = start
    while True:
        options = [(w, c) for w, c in incident[current] if w != previous]
        if not options:
            break
        w, c = options[0]
        colors.append(c)
        vertices.append(w)
        previous, current = current, w
    return vertices, colors


__all__ = [
    "VertexSet",
    "ColorSet",
    "Edge",
    "ColoredEdge",
    "SetLike",
    "mask_of",
    "bits",
    "set_of",
    "full_mask",
    "GraphCollection",
    "complete_rows",
    "min_degree",
    "color_list",
    "edge_count",
    "collection_edge_count",
    "TransversalSubgraph",
    "ValidationResult",
    "validate",
    "cycle_from_sequence",
    "path_from_sequence",
    "walk_sequence",
]
