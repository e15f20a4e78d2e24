"""
Stability of Collections
========================

Per-color structure profiles and the collection-level verdicts built on
them:

- a vertex is c-good when G_c is not eps-extremal or the vertex lies in
  A_c ∪ B_c of its characteristic partition
- colors i, j are delta-crossing when both are eps-extremal and
  |A_i △ A_j| >= delta*n and |A_i △ B_j| >= delta*n; the cross graph has
  the colors as vertices and the crossing pairs as edges
- a collection is (gamma, alpha)-strongly stable when at least gamma*n
  colors are alpha-nice, and (eps, delta)-weakly stable when its cross
  graph has at least delta*n^2 edges

Identical graphs are analysed once per call.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import networkx as nx

from ..core.collection import ColorSet, GraphCollection
from ..core.exceptions import InvalidInputError, PreconditionError
from ..core.structured_logger import get_logger
from ..core.types import AnalysisMode, StabilityStatus
from .constants import HALF, NICE_HEURISTIC_RESTARTS, as_fraction
from .niceness import CollectionNicenessVerdict, NicenessVerdict, is_collection_nice, is_nice
from .partition import CharacteristicPartition, characteristic_partition

logger = get_logger("structure.stability")


# =============================================================================
# COLOR PROFILES
# =============================================================================


@dataclass(frozen=True)
class ColorAnalysis:
    """Extremality verdict (niceness at eps^3) and partition of one color"""

    color: int
    extremal: bool
    verdict: NicenessVerdict
    partition: Optional[CharacteristicPartition]
    low_degree_vertices: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "color": self.color,
            "extremal": self.extremal,
            "verdict": self.verdict.to_dict(),
            "partition": self.partition.to_dict() if self.partition else None,
            "low_degree_vertices": self.low_degree_vertices,
        }


def analyze_colors(
    g: GraphCollection,
    eps,
    mode: AnalysisMode = AnalysisMode.AUTO,
    seed: int = 0,
    restarts: int = NICE_HEURISTIC_RESTARTS,
    colors: Optional[Sequence[int]] = None,
) -> List[ColorAnalysis]:
    """
    Profile every color (or the given ones): eps-extremality, the
    characteristic partition when extremal, and how many vertices miss
    the degree floor (1/2 - eps^3)n.
    """
    eps = as_fraction(eps)
    if not 0 < eps < 1 or eps**3 >= HALF:
        raise InvalidInputError(f"eps must lie in (0, 1) with eps^3 < 1/2, got {eps}")
    mu = eps**3
    chosen = range(g.colors) if colors is None else colors
    by_signature: Dict[Any, ColorAnalysis] = {}
    profiles = []
    for c in chosen:
        key = g.signature(c)
        if key not in by_signature:
            verdict = is_nice(g, mu, mode, c, seed, restarts)
            partition = None
            if not verdict.nice:
                partition = characteristic_partition(g, eps, c, mode, seed, restarts)
            low = sum(1 for row in g.rows[c] if row.bit_count() < (HALF - mu) * g.n)
            by_signature[key] = ColorAnalysis(c, not verdict.nice, verdict, partition, low)
        shared = by_signature[key]
        profiles.append(
            ColorAnalysis(c, shared.extremal, shared.verdict, shared.partition, shared.low_degree_vertices)
        )
    logger.debug(
        "Analysed colors",
        colors=len(profiles),
        distinct=len(by_signature),
        extremal=sum(p.extremal for p in profiles),
    )
    return profiles


def is_good_vertex(
    g: GraphCollection,
    c: int,
    v: int,
    eps,
    mode: AnalysisMode = AnalysisMode.AUTO,
    seed: int = 0,
    profile: Optional[ColorAnalysis] = None,
) -> bool:
    """
    Whether v is c-good. An extremal color whose partition could not be
    extracted has no good vertices.
    """
    if not 0 <= v < g.n:
        raise InvalidInputError(f"vertex {v} out of range for n = {g.n}")
    if profile is None:
        profile = analyze_colors(g, eps, mode, seed, colors=[c])[0]
    if not profile.extremal:
        return True
    if profile.partition is None:
        return False
    return v not in profile.partition.C


# =============================================================================
# CROSSING
# =============================================================================


def _crossing(first: CharacteristicPartition, second: CharacteristicPartition, bound: Fraction) -> bool:
    return len(first.A ^ second.A) >= bound and len(first.A ^ second.B) >= bound


def cross_graph(
    g: GraphCollection,
    eps,
    delta,
    mode: AnalysisMode = AnalysisMode.AUTO,
    seed: int = 0,
    profiles: Optional[List[ColorAnalysis]] = None,
) -> nx.Graph:
    """Graph on the colors whose edges are the delta-crossing pairs"""
    delta = as_fraction(delta)
    if profiles is None:
        profiles = analyze_colors(g, eps, mode, seed)
    bound = delta * g.n
    graph = nx.Graph()
    graph.add_nodes_from(range(g.colors))
    with_partition = [p for p in profiles if p.extremal and p.partition is not None]
    for i, first in enumerate(with_partition):
        for second in with_partition[i + 1 :]:
            assert first.partition is not None and second.partition is not None
            if _crossing(first.partition, second.partition, bound):
                graph.add_edge(first.color, second.color)
    return graph


def check_crossing_observation(
    g: GraphCollection,
    i: int,
    j: int,
    eps,
    delta,
    mode: AnalysisMode = AnalysisMode.AUTO,
    seed: int = 0,
) -> bool:
    """
    For delta-crossing colors i, j with eps <= delta/8: whether every
    intersection X_i ∩ Y_j (X, Y ∈ {A, B}) has at least delta*n/4 vertices.

    Raises:
        PreconditionError: if eps > delta/8 or i, j are not a crossing pair
    """
    eps, delta = as_fraction(eps), as_fraction(delta)
    if eps > delta / 8:
        raise PreconditionError(f"needs eps <= delta/8, got eps = {eps}, delta = {delta}")
    first, second = analyze_colors(g, eps, mode, seed, colors=[i, j])
    if first.partition is None or second.partition is None:
        raise PreconditionError(f"colors {i} and {j} are not both extremal with a partition")
    if not _crossing(first.partition, second.partition, delta * g.n):
        raise PreconditionError(f"colors {i} and {j} are not {delta}-crossing")
    floor = delta * g.n / 4
    p, q = first.partition, second.partition
    return all(len(x & y) >= floor for x in (p.A, p.B) for y in (q.A, q.B))


# =============================================================================
# STABILITY
# =============================================================================


@dataclass(frozen=True)
class StabilityVerdict:
    status: StabilityStatus
    nice_colors: ColorSet
    cross_edge_count: int
    parameters: Dict[str, str]
    heuristic: bool = False

    @property
    def stable(self) -> bool:
        return self.status != StabilityStatus.NOT_STABLE

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "nice_colors": sorted(self.nice_colors),
            "cross_edge_count": self.cross_edge_count,
            "parameters": dict(self.parameters),
            "heuristic": self.heuristic,
        }


def classify_stability(
    g: GraphCollection,
    gamma,
    alpha,
    eps,
    delta,
    mode: AnalysisMode = AnalysisMode.AUTO,
    seed: int = 0,
    restarts: int = NICE_HEURISTIC_RESTARTS,
) -> StabilityVerdict:
    """
    Strongly stable if at least gamma*n colors are alpha-nice, otherwise
    weakly stable if the (eps, delta) cross graph has at least delta*n^2
    edges, otherwise not stable. Both witnesses are always computed.
    """
    gamma, alpha, eps, delta = (as_fraction(x) for x in (gamma, alpha, eps, delta))
    for name, value in (("gamma", gamma), ("alpha", alpha), ("eps", eps), ("delta", delta)):
        if not 0 < value < 1:
            raise InvalidInputError(f"{name} must lie in (0, 1), got {value}")
    if alpha >= HALF:
        raise InvalidInputError(f"alpha must be below 1/2, got {alpha}")

    n = g.n
    nice_verdicts = {}
    nice_colors = set()
    for c in range(g.colors):
        verdict = is_nice(g, alpha, mode, c, seed, restarts)
        nice_verdicts[c] = verdict
        if verdict.nice:
            nice_colors.add(c)
    profiles = analyze_colors(g, eps, mode, seed, restarts)
    cross_edges = cross_graph(g, eps, delta, mode, seed, profiles).number_of_edges()

    if len(nice_colors) >= gamma * n:
        status = StabilityStatus.STRONGLY_STABLE
    elif cross_edges >= delta * n * n:
        status = StabilityStatus.WEAKLY_STABLE
    else:
        status = StabilityStatus.NOT_STABLE

    heuristic = any(v.heuristic for v in nice_verdicts.values()) or any(
        p.verdict.heuristic for p in profiles
    )
    logger.info(
        "Stability classified",
        status=status.value,
        nice_colors=len(nice_colors),
        cross_edges=cross_edges,
    )
    return StabilityVerdict(
        status,
        frozenset(nice_colors),
        cross_edges,
        {"gamma": str(gamma), "alpha": str(alpha), "eps": str(eps), "delta": str(delta)},
        heuristic,
    )


@dataclass(frozen=True)
class StabilityFinding:
    """Whether a stable verdict is matched by collection niceness at mu"""

    verdict: StabilityVerdict
    niceness: CollectionNicenessVerdict

    @property
    def consistent(self) -> bool:
        return not self.verdict.stable or self.niceness.nice

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.to_dict(),
            "niceness": self.niceness.to_dict(),
            "consistent": self.consistent,
        }


def stable_implies_nice(
    g: GraphCollection,
    verdict: StabilityVerdict,
    mu,
    mode: AnalysisMode = AnalysisMode.AUTO,
    seed: int = 0,
) -> StabilityFinding:
    """
    Desk-scale check that a stable collection is mu-nice. The implication
    only holds for large n; an inconsistent result is a finding, not an
    error.
    """
    finding = StabilityFinding(verdict, is_collection_nice(g, mu, mode, seed))
    if not finding.consistent:
        logger.warning(
            "Stable collection is not nice",
            status=verdict.status.value,
            mu=str(as_fraction(mu)),
            witness=sorted(finding.niceness.witness or ()),
        )
    return finding


__all__ = [
    "ColorAnalysis",
    "analyze_colors",
    "is_good_vertex",
    "cross_graph",
    "check_crossing_observation",
    "StabilityVerdict",
    "classify_stability",
    "StabilityFinding",
    "stable_implies_nice",
]
