"""
Core data model: graph collections, transversal subgraphs, codec, errors and logging.
"""

from .collection import (
    ColorSet,
    GraphCollection,
    TransversalSubgraph,
    ValidationResult,
    VertexSet,
    bits,
    collection_edge_count,
    color_list,
    cycle_from_sequence,
    edge_count,
    mask_of,
    min_degree,
    path_from_sequence,
    set_of,
    validate,
    walk_sequence,
)
from .exceptions import (
    CollectionFormatError,
    ErrorCode,
    InvalidInputError,
    PreconditionError,
    RainbowHamError,
    SizeCapExceededError,
)
from .structured_logger import StructuredLogger, TraceContext, get_logger
from .types import SearchStatus, SubgraphKind, Target

__all__ = [
    "ColorSet",
    "GraphCollection",
    "TransversalSubgraph",
    "ValidationResult",
    "VertexSet",
    "bits",
    "collection_edge_count",
    "color_list",
    "cycle_from_sequence",
    "edge_count",
    "mask_of",
    "min_degree",
    "path_from_sequence",
    "set_of",
    "validate",
    "walk_sequence",
    "CollectionFormatError",
    "ErrorCode",
    "InvalidInputError",
    "PreconditionError",
    "RainbowHamError",
    "SizeCapExceededError",
    "StructuredLogger",
    "TraceContext",
    "get_logger",
    "SearchStatus",
    "SubgraphKind",
    "Target",
]
