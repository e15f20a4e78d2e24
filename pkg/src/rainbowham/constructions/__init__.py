"""
Generators for the extremal families and randomized instances.
"""

from .families import (
    Bipartition,
    canonical_bipartition,
    make_balanced_bipartite,
    make_ec2_with_smaller_part_edges,
    make_H,
    make_half_split,
    make_pattern_collection,
    make_two_cliques,
    pattern_rows,
)
from .random_graphs import perturb, perturb_with_log, random_min_degree_collection, toggle_budget

__all__ = [
    "Bipartition",
    "canonical_bipartition",
    "make_balanced_bipartite",
    "make_ec2_with_smaller_part_edges",
    "make_H",
    "make_half_split",
    "make_pattern_collection",
    "make_two_cliques",
    "pattern_rows",
    "perturb",
    "perturb_with_log",
    "random_min_degree_collection",
    "toggle_budget",
]
