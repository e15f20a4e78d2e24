"""
Search Budgets and Outcomes
===========================

``SearchBudget`` bounds an exact search by node count and wall clock.
Running out of budget is reported as its own status; it is never folded
into ``exhausted``, which is a proof of non-existence.
"""

import time
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from ..core.collection import TransversalSubgraph
from ..core.exceptions import InvalidInputError
from ..core.types import SearchStatus


@dataclass(frozen=True)
class SearchBudget:
    """Limits and scheduling policy for one search call"""

    node_limit: Optional[int] = None
    time_limit_ms: Optional[int] = None
    deterministic: bool = True
    threads: int = 1
    parity_precheck: bool = True

    def __post_init__(self) -> None:
        if self.node_limit is not None and self.node_limit <= 0:
            raise InvalidInputError(f"node_limit must be positive, got {self.node_limit}")
        if self.time_limit_ms is not None and self.time_limit_ms <= 0:
            raise InvalidInputError(f"time_limit_ms must be positive, got {self.time_limit_ms}")
        if self.threads < 1:
            raise InvalidInputError(f"threads must be >= 1, got {self.threads}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "node_limit": self.node_limit,
            "time_limit_ms": self.time_limit_ms,
            "deterministic": self.deterministic,
            "threads": self.threads,
            "parity_precheck": self.parity_precheck,
        }


@dataclass
class SearchStats:
    nodes: int = 0
    elapsed_ms: float = 0.0
    matching_prunes: int = 0
    forced_color_prunes: int = 0
    degree_prunes: int = 0
    independent_set_prunes: int = 0
    cut_prunes: int = 0
    backing: str = "search"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "nodes": self.nodes,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "matching_prunes": self.matching_prunes,
            "forced_color_prunes": self.forced_color_prunes,
            "degree_prunes": self.degree_prunes,
            "independent_set_prunes": self.independent_set_prunes,
            "cut_prunes": self.cut_prunes,
            "backing": self.backing,
        }


@dataclass(frozen=True)
class SearchOutcome:
    """
    Result of an exact search.

    ``status == FOUND`` exactly when ``witness`` is present; the witness
    has passed ``validate`` before the outcome is built.
    """

    status: SearchStatus
    witness: Optional[TransversalSubgraph] = None
    stats: SearchStats = field(default_factory=SearchStats)

    def __post_init__(self) -> None:
        if (self.status == SearchStatus.FOUND) != (self.witness is not None):
            raise ValueError("a witness is present exactly when the status is 'found'")

    @property
    def found(self) -> bool:
        return self.status == SearchStatus.FOUND


class BudgetExceeded(Exception):
    """Raised inside a search when its budget runs out"""


class BudgetTracker:
    """
    Counts search nodes and checks the clock every ``check_every`` nodes.

    ``stop`` is an event shared with sibling searches; once it is set the
    search unwinds at its next check as if its budget had run out.
    """

    def __init__(self, budget: SearchBudget, check_every: int = 512, stop: Optional[Any] = None):
        self.budget = budget
        self.nodes = 0
        self.check_every = check_every
        self.stop = stop
        self.started = time.monotonic()
        self.deadline = (
            None
            if budget.time_limit_ms is None
            else self.started + budget.time_limit_ms / 1000.0
        )

    def tick(self) -> None:
        self.nodes += 1
        limit = self.budget.node_limit
        if limit is not None and self.nodes > limit:
            raise BudgetExceeded()
        if self.nodes % self.check_every == 0:
            if self.stop is not None and self.stop.is_set():
                raise BudgetExceeded()
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise BudgetExceeded()

    def elapsed_ms(self) -> float:
        return (time.monotonic() - self.started) * 1000.0


__all__ = ["SearchBudget", "SearchStats", "SearchOutcome", "BudgetExceeded", "BudgetTracker"]
