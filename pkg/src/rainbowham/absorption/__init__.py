"""
Absorption toolkit: random transversal matchings of directed k-graph
collections, absorbing paths and the insertions they allow, and
absorbing cycles.
"""

from .cycle import (
    AbsorbingCycleDemo,
    AbsorbingCycleReport,
    build_absorbing_cycle_demo,
    check_absorbing_cycle,
    max_disjoint_windows,
)
from .kgraph import (
    AbsorbingPathTarget,
    ColorPathFamily,
    CompleteKGraph,
    DirectedKGraph,
    DirectedKGraphCollection,
    ExplicitKGraph,
    HypothesisReport,
    TransversalMatchingResult,
    check_matching_hypotheses,
    random_transversal_matching,
)
from .paths import (
    AbsorbingPathRecord,
    absorb_path,
    absorb_vertex,
    enumerate_absorbing_paths,
    record_violations,
)

__all__ = [
    "AbsorbingCycleDemo",
    "AbsorbingCycleReport",
    "build_absorbing_cycle_demo",
    "check_absorbing_cycle",
    "max_disjoint_windows",
    "AbsorbingPathTarget",
    "ColorPathFamily",
    "CompleteKGraph",
    "DirectedKGraph",
    "DirectedKGraphCollection",
    "ExplicitKGraph",
    "HypothesisReport",
    "TransversalMatchingResult",
    "check_matching_hypotheses",
    "random_transversal_matching",
    "AbsorbingPathRecord",
    "absorb_path",
    "absorb_vertex",
    "enumerate_absorbing_paths",
    "record_violations",
]
