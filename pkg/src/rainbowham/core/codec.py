"""
Collection and Witness Codec
============================

Canonical JSON interchange:

    collection: {"version": 1, "n": <int>, "graphs": [[[u, v], ...], ...], "meta": {...}}
    witness:    {"version": 1, "kind": "cycle", "edges": [[u, v, c], ...]}

Document structure is validated with pydantic models; range, loop and
duplicate checks run afterwards so that every error names the offending
field path (``graphs[2][5]``) or, for JSON syntax errors, the line and
column.
"""

import json
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt
from pydantic import ValidationError as PydanticValidationError

from .collection import GraphCollection, TransversalSubgraph
from .exceptions import CollectionFormatError
from .types import SubgraphKind

FORMAT_VERSION = 1

PairModel = Annotated[List[StrictInt], Field(min_length=2, max_length=2)]
TripleModel = Annotated[List[StrictInt], Field(min_length=3, max_length=3)]


class CollectionDocument(BaseModel):
    """Wire model of a collection file"""

    version: Literal[1]
    n: StrictInt = Field(..., ge=1, description="Number of vertices")
    graphs: List[List[PairModel]] = Field(..., min_length=1, description="Edge list per color")
    meta: Optional[Dict[str, Any]] = Field(None, description="Generator provenance")

    model_config = ConfigDict(extra="forbid")


class WitnessDocument(BaseModel):
    """Wire model of a transversal subgraph"""

    version: Literal[1] = 1
    kind: SubgraphKind
    edges: List[TripleModel]

    model_config = ConfigDict(extra="forbid")


# =============================================================================
# ERROR LOCATIONS
# =============================================================================


def _format_loc(loc: tuple) -> str:
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path or "<document>"


def _raise_from_pydantic(exc: PydanticValidationError) -> None:
    first = exc.errors()[0]
    raise CollectionFormatError(
        first["msg"],
        location=_format_loc(tuple(first["loc"])),
        details={"errors": len(exc.errors())},
    ) from exc


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CollectionFormatError(exc.msg, location=f"line {exc.lineno}, column {exc.colno}") from exc


# =============================================================================
# COLLECTIONS
# =============================================================================


def parse_collection(text: str) -> GraphCollection:
    """
    Parse a collection document.

    Raises:
        CollectionFormatError: on JSON syntax errors, missing or mistyped
            fields, unknown versions, loops, out-of-range indices and
            duplicate edges within one color (in either orientation)
    """
    raw = _load_json(text)
    try:
        doc = CollectionDocument.model_validate(raw)
    except PydanticValidationError as exc:
        _raise_from_pydantic(exc)

    n = doc.n
    for c, edges in enumerate(doc.graphs):
        seen: Dict[tuple, int] = {}
        for i, (u, v) in enumerate(edges):
            where = f"graphs[{c}][{i}]"
            if not (0 <= u < n and 0 <= v < n):
                raise CollectionFormatError(f"vertex index out of range for n = {n}", where)
            if u == v:
                raise CollectionFormatError(f"loop at vertex {u}", where)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise CollectionFormatError(
                    f"duplicate edge {list(key)} (first listed at graphs[{c}][{seen[key]}])", where
                )
            seen[key] = i

    return GraphCollection.from_edge_lists(
        n, [[tuple(e) for e in edges] for edges in doc.graphs], doc.meta or {}
    )


def collection_to_dict(g: GraphCollection) -> Dict[str, Any]:
    document: Dict[str, Any] = {
        "version": FORMAT_VERSION,
        "n": g.n,
        "graphs": [[[u, v] for u, v in g.edges(c)] for c in range(g.colors)],
    }
    if g.meta:
        document["meta"] = g.meta
    return document


def dump_collection(g: GraphCollection) -> str:
    return json.dumps(collection_to_dict(g), sort_keys=True)


def load_collection(path: Union[str, Path]) -> GraphCollection:
    """Read a collection file; format errors are prefixed with the file name"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CollectionFormatError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return parse_collection(text)
    except CollectionFormatError as exc:
        location = f"{path}: {exc.location}" if exc.location else str(path)
        raise CollectionFormatError(exc.reason, location=location) from exc


def save_collection(g: GraphCollection, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_collection(g) + "\n", encoding="utf-8")


# =============================================================================
# WITNESSES
# =============================================================================


def subgraph_to_dict(t: TransversalSubgraph) -> Dict[str, Any]:
    return {
        "version": FORMAT_VERSION,
        "kind": t.kind.value,
        "edges": [[u, v, c] for u, v, c in t.edges],
    }


def dump_subgraph(t: TransversalSubgraph) -> str:
    return json.dumps(subgraph_to_dict(t), sort_keys=True)


def parse_subgraph(text: str) -> TransversalSubgraph:
    raw = _load_json(text)
    try:
        doc = WitnessDocument.model_validate(raw)
    except PydanticValidationError as exc:
        _raise_from_pydantic(exc)
    return TransversalSubgraph(tuple((u, v, c) for u, v, c in doc.edges), doc.kind)


def load_subgraph(path: Union[str, Path]) -> TransversalSubgraph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CollectionFormatError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_subgraph(text)


__all__ = [
    "FORMAT_VERSION",
    "CollectionDocument",
    "WitnessDocument",
    "parse_collection",
    "collection_to_dict",
    "dump_collection",
    "load_collection",
    "save_collection",
    "subgraph_to_dict",
    "dump_subgraph",
    "parse_subgraph",
    "load_subgraph",
]
