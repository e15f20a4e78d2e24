"""
Exact search for rainbow Hamilton cycles, paths and matchings.
"""

from .budget import SearchBudget, SearchOutcome, SearchStats
from .hamilton import find_transversal_hamilton_cycle, find_transversal_hamilton_path
from .oracle import brute_force_oracle
from .rainbow_matching import max_transversal_matching, two_disjoint_transversal_matchings

__all__ = [
    "SearchBudget",
    "SearchOutcome",
    "SearchStats",
    "find_transversal_hamilton_cycle",
    "find_transversal_hamilton_path",
    "brute_force_oracle",
    "max_transversal_matching",
    "two_disjoint_transversal_matchings",
]
