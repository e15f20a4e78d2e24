"""
rainbowham - Transversal Hamiltonicity of Graph Collections
===========================================================

A collection G_1, ..., G_n of graphs on one vertex set has a transversal
(rainbow) Hamilton cycle when a Hamilton cycle can be built using exactly
one edge from each graph. This package generates the extremal
collections, decides the question exactly at desk scale, classifies
collections structurally (nice, extremal, stable), measures their
distance to the extremal families and emits machine-checkable
non-Hamiltonicity certificates.

Layout:
    core → constructions → solver
                         → structure → closeness → absorption
    harness binds them into reproducible experiments; cli is the
    command-line frontend.

Usage:
    from rainbowham import make_H, find_transversal_hamilton_cycle

    outcome = find_transversal_hamilton_cycle(make_H(6, 5, 1))
    assert outcome.status == "exhausted"
"""

try:
    from importlib import metadata
    __version__ = metadata.version('rainbowham')
except Exception:
    __version__ = '0.0.0-dev'

from .closeness import (
    distance_to_H_family,
    distance_to_half_split,
    find_independent_set_certificate,
    parity_certificate,
    verify_certificate,
)
from .constructions import (
    make_H,
    make_balanced_bipartite,
    make_half_split,
    make_two_cliques,
    perturb,
    random_min_degree_collection,
)
from .core import (
    GraphCollection,
    RainbowHamError,
    TransversalSubgraph,
    validate,
)
from .solver import (
    SearchBudget,
    brute_force_oracle,
    find_transversal_hamilton_cycle,
    find_transversal_hamilton_path,
    max_transversal_matching,
)
from .structure import characteristic_partition, classify_stability, is_extremal, is_nice

__all__ = [
    '__version__',
    'GraphCollection',
    'TransversalSubgraph',
    'RainbowHamError',
    'validate',
    'make_two_cliques',
    'make_balanced_bipartite',
    'make_H',
    'make_half_split',
    'perturb',
    'random_min_degree_collection',
    'SearchBudget',
    'find_transversal_hamilton_cycle',
    'find_transversal_hamilton_path',
    'max_transversal_matching',
    'brute_force_oracle',
    'is_nice',
    'is_extremal',
    'characteristic_partition',
    'classify_stability',
    'parity_certificate',
    'find_independent_set_certificate',
    'verify_certificate',
    'distance_to_H_family',
    'distance_to_half_split',
]
