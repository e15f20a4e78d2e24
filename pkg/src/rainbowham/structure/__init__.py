"""
Structural classification: niceness, extremality, characteristic
partitions, crossing and stability.
"""

from .niceness import (
    CollectionNicenessVerdict,
    NicenessVerdict,
    NiceWitness,
    is_collection_nice,
    is_extremal,
    is_nice,
)
from .partition import CharacteristicPartition, characteristic_partition, partition_violations
from .stability import (
    ColorAnalysis,
    StabilityFinding,
    StabilityVerdict,
    analyze_colors,
    check_crossing_observation,
    classify_stability,
    cross_graph,
    is_good_vertex,
    stable_implies_nice,
)

__all__ = [
    "CollectionNicenessVerdict",
    "NicenessVerdict",
    "NiceWitness",
    "is_collection_nice",
    "is_extremal",
    "is_nice",
    "CharacteristicPartition",
    "characteristic_partition",
    "partition_violations",
    "ColorAnalysis",
    "StabilityFinding",
    "StabilityVerdict",
    "analyze_colors",
    "check_crossing_observation",
    "classify_stability",
    "cross_graph",
    "is_good_vertex",
    "stable_implies_nice",
]
