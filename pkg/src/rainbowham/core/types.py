"""
Core Type Definitions
=====================

Centralized enumerations shared across modules. String-valued enums keep
JSON documents readable and prevent magic strings in the code base.
"""

from enum import Enum, IntEnum


class SubgraphKind(str, Enum):
    """Shape of a transversal subgraph"""

    CYCLE = "cycle"
    PATH = "path"
    MATCHING = "matching"
    GENERIC = "generic"

    def __str__(self) -> str:
        return self.value


class Target(str, Enum):
    """Spanning structure a solver or certificate is about"""

    CYCLE = "cycle"
    PATH = "path"

    def __str__(self) -> str:
        return self.value


class SearchStatus(str, Enum):
    """Outcome of an exact search.

    ``EXHAUSTED`` is a proof of non-existence; ``BUDGET_EXCEEDED`` proves
    nothing.
    """

    FOUND = "found"
    EXHAUSTED = "exhausted"
    BUDGET_EXCEEDED = "budget_exceeded"

    def __str__(self) -> str:
        return self.value


class AnalysisMode(str, Enum):
    """How a min-over-subsets question is answered"""

    EXHAUSTIVE = "exhaustive"
    HEURISTIC = "heuristic"
    LOCAL_SEARCH = "local_search"
    AUTO = "auto"

    def __str__(self) -> str:
        return self.value


class Pattern(str, Enum):
    """Extremal pattern of one color on a bipartition"""

    EC1 = "EC1"
    EC2 = "EC2"

    def __str__(self) -> str:
        return self.value


class PartitionKind(str, Enum):
    EC1_EXTREMAL = "EC1_extremal"
    EC2_EXTREMAL = "EC2_extremal"

    def __str__(self) -> str:
        return self.value


class StabilityStatus(str, Enum):
    STRONGLY_STABLE = "strongly_stable"
    WEAKLY_STABLE = "weakly_stable"
    NOT_STABLE = "not_stable"

    def __str__(self) -> str:
        return self.value


class BInternal(str, Enum):
    """Interior of the complement part in a half-split collection"""

    EMPTY = "empty"
    COMPLETE = "complete"

    def __str__(self) -> str:
        return self.value


class ValidationReason(str, Enum):
    """Why a transversal subgraph did or did not validate"""

    OK = "ok"
    EMPTY = "empty"
    VERTEX_OUT_OF_RANGE = "vertex_out_of_range"
    COLOR_OUT_OF_RANGE = "color_out_of_range"
    LOOP = "loop"
    REPEATED_COLOR = "repeated_color"
    MISSING_EDGE = "missing_edge"
    NOT_A_CYCLE = "not_a_cycle"
    NOT_A_PATH = "not_a_path"
    NOT_A_MATCHING = "not_a_matching"

    def __str__(self) -> str:
        return self.value


class ExitCode(IntEnum):
    """Process exit codes of the command line"""

    SUCCESS = 0
    NEGATIVE = 1
    USAGE_ERROR = 2
    BUDGET_EXCEEDED = 3


__all__ = [
    "SubgraphKind",
    "Target",
    "SearchStatus",
    "AnalysisMode",
    "Pattern",
    "PartitionKind",
    "StabilityStatus",
    "BInternal",
    "ValidationReason",
    "ExitCode",
]
