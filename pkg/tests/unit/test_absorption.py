"""
Unit tests for the absorption toolkit
=====================================

Tests:
1. Directed k-graphs and random transversal matchings
2. Absorbing path enumeration and insertion
3. Disjoint windows and the absorbing cycle checker
4. The strongly stable construction and its refusals
"""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from rainbowham.absorption import (
    AbsorbingPathRecord,
    ColorPathFamily,
    CompleteKGraph,
    DirectedKGraphCollection,
    ExplicitKGraph,
    absorb_path,
    absorb_vertex,
    build_absorbing_cycle_demo,
    check_absorbing_cycle,
    enumerate_absorbing_paths,
    max_disjoint_windows,
    random_transversal_matching,
    record_violations,
)
from rainbowham.constructions import make_H
from rainbowham.core.collection import (
    GraphCollection,
    complete_rows,
    cycle_from_sequence,
    path_from_sequence,
    validate,
)
from rainbowham.core.exceptions import InvalidInputError, PreconditionError
from rainbowham.core.types import StabilityStatus
from rainbowham.structure import StabilityVerdict

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def _verdict(status: StabilityStatus, nice) -> StabilityVerdict:
    return StabilityVerdict(status, frozenset(nice), 0, {})


# =============================================================================
# K-GRAPHS AND MATCHINGS
# =============================================================================


@pytest.mark.unit
class TestKGraphs:
    """Implicit and explicit k-graphs"""

    def test_complete_kgraph(self):
        h = CompleteKGraph(5, 2)
        assert h.size() == 20
        assert (0, 1) in h
        assert (1, 1) not in h
        assert len(list(h.items())) == 20

    def test_explicit_multigraph(self):
        h = ExplicitKGraph(4, 2, [(0, 1), (0, 1), (2, 3)], multi=True)
        assert h.size() == 3
        assert h.multiplicity((0, 1)) == 2
        simple = ExplicitKGraph(4, 2, [(0, 1), (0, 1)])
        assert simple.size() == 1

    def test_explicit_rejects_repeated_vertex(self):
        with pytest.raises(InvalidInputError):
            ExplicitKGraph(4, 2, [(1, 1)])

    def test_color_path_family_counts_ordered_quadruples(self, complete_collection):
        family = ColorPathFamily(complete_collection(5), (0, 1, 2))
        assert family.size() == 5 * 4 * 3 * 2
        assert len(list(family.items())) == family.size()

    def test_mixed_shapes_are_rejected(self):
        with pytest.raises(InvalidInputError):
            DirectedKGraphCollection([CompleteKGraph(5, 2), CompleteKGraph(6, 2)])


@pytest.mark.unit
class TestRandomTransversalMatching:
    """Sampling, deletion and coverage"""

    def test_single_host(self):
        hosts = DirectedKGraphCollection([CompleteKGraph(10, 2)])
        targets = DirectedKGraphCollection([CompleteKGraph(10, 2)])
        result = random_transversal_matching(hosts, targets, 0.5, seed=1)
        assert result.size == 1
        assert result.guaranteed
        assert result.hypotheses.ok

    def test_output_is_a_matching(self):
        hosts = DirectedKGraphCollection([CompleteKGraph(40, 2) for _ in range(10)])
        targets = DirectedKGraphCollection([CompleteKGraph(40, 2)])
        result = random_transversal_matching(hosts, targets, 0.25, seed=5, rounds=3)
        for (i, first), (j, second) in combinations(result.edges.items(), 2):
            assert not set(first) & set(second)
        assert result.size <= 10

    def test_empty_host_violates_hypotheses(self):
        hosts = DirectedKGraphCollection([ExplicitKGraph(10, 2)])
        targets = DirectedKGraphCollection([CompleteKGraph(10, 2)])
        result = random_transversal_matching(hosts, targets, 0.5, seed=0, rounds=2)
        assert not result.hypotheses.ok
        assert result.hypotheses.sparse_hosts == (0,)
        assert result.size == 0
        assert not result.guaranteed

    def test_deterministic_under_seed(self):
        hosts = DirectedKGraphCollection([CompleteKGraph(30, 3) for _ in range(4)])
        targets = DirectedKGraphCollection([CompleteKGraph(30, 3)])
        first = random_transversal_matching(hosts, targets, 0.3, seed=9)
        second = random_transversal_matching(hosts, targets, 0.3, seed=9)
        assert first.edges == second.edges

    def test_argument_checks(self):
        hosts = DirectedKGraphCollection([CompleteKGraph(10, 2)])
        with pytest.raises(InvalidInputError):
            random_transversal_matching(hosts, hosts, 1)
        with pytest.raises(InvalidInputError):
            random_transversal_matching(hosts, hosts, 0.5, rounds=0)
        with pytest.raises(InvalidInputError):
            random_transversal_matching(hosts, DirectedKGraphCollection([CompleteKGraph(10, 3)]), 0.5)


# =============================================================================
# ABSORBING PATHS
# =============================================================================


@pytest.mark.unit
class TestEnumeration:
    """Listing c-absorbing paths"""

    def test_complete_collection_vertex_anchor(self, complete_collection):
        records = enumerate_absorbing_paths(complete_collection(6), 0, 0, 0)
        m, s = 5, 6
        assert len(records) == m * (m - 1) * (m - 2) * (m - 3) * (s - 1) * (s - 2) * (s - 3)

    def test_complete_collection_pair_anchor(self, complete_collection):
        records = enumerate_absorbing_paths(complete_collection(7), 3, 0, 1)
        m, s = 5, 7
        assert len(records) == m * (m - 1) * (m - 2) * (m - 3) * (s - 1) * (s - 2) * (s - 3)

    def test_records_are_valid(self, complete_collection):
        g = complete_collection(6)
        for record in enumerate_absorbing_paths(g, 2, 0, 0, forbidden_vertices={5}, limit=50):
            assert record_violations(g, record) == []
            assert 5 not in record.vertices

    def test_forbidden_colors_are_avoided(self, complete_collection):
        records = enumerate_absorbing_paths(complete_collection(7), 0, 1, 1, forbidden_colors={3, 4})
        assert records
        assert all(not {3, 4} & set(r.colors) for r in records)

    def test_limit(self, complete_collection):
        assert len(enumerate_absorbing_paths(complete_collection(6), 0, 0, 0, limit=7)) == 7

    def test_forbidden_anchor(self, complete_collection):
        with pytest.raises(PreconditionError):
            enumerate_absorbing_paths(complete_collection(6), 0, 0, 0, forbidden_vertices={0})
        with pytest.raises(PreconditionError):
            enumerate_absorbing_paths(complete_collection(6), 0, 0, 0, forbidden_colors={0})

    def test_sampled_mode_returns_valid_subset(self, complete_collection):
        g = complete_collection(8)
        records = enumerate_absorbing_paths(g, 0, 0, 0, exhaustive_max_n=4, samples=20, seed=3, limit=100)
        assert records
        assert all(record_violations(g, r) == [] for r in records)

    def test_violations_are_named(self, complete_collection):
        g = complete_collection(6)
        record = AbsorbingPathRecord((0, 1, 2, 3), (1, 2, 3), 1, (0, 0))
        failures = record_violations(g, record)
        assert "anchor_on_path" in failures
        assert "absorbed_color_on_path" in failures


@pytest.mark.unit
class TestInsertion:
    """Absorbing a vertex or a path into a rainbow cycle"""

    def test_absorb_vertex(self, complete_collection):
        g = complete_collection(7)
        cycle = cycle_from_sequence([1, 2, 3, 4, 5, 6], [0, 1, 2, 3, 4, 5])
        record = AbsorbingPathRecord((1, 2, 3, 4), (0, 1, 2), 6, (0, 0))
        result = absorb_vertex(g, cycle, record)
        assert len(result) == 7
        assert result.vertices() == frozenset(range(7))
        assert validate(g, result)

    def test_absorb_vertex_against_reversed_walk(self, complete_collection):
        g = complete_collection(7)
        cycle = cycle_from_sequence([1, 2, 3, 4, 5, 6], [0, 1, 2, 3, 4, 5])
        record = AbsorbingPathRecord((4, 3, 2, 1), (2, 1, 0), 6, (0, 0))
        assert validate(g, absorb_vertex(g, cycle, record))

    def test_absorb_path(self, complete_collection):
        g = complete_collection(8)
        cycle = cycle_from_sequence([2, 3, 4, 5, 6, 7], [0, 1, 2, 3, 4, 5])
        record = AbsorbingPathRecord((2, 3, 4, 5), (0, 1, 2), 6, (0, 1))
        result = absorb_path(g, cycle, record, path_from_sequence([0, 1], [7]))
        assert len(result) == 8
        assert result.colors() == frozenset(range(8))
        assert validate(g, result)

    def test_vertex_already_on_cycle(self, complete_collection):
        g = complete_collection(7)
        cycle = cycle_from_sequence([0, 1, 2, 3, 4, 5], [0, 1, 2, 3, 4, 5])
        record = AbsorbingPathRecord((1, 2, 3, 4), (0, 1, 2), 5, (6, 6))
        with pytest.raises(PreconditionError):
            absorb_vertex(g, cycle, record)
        with pytest.raises(PreconditionError):
            absorb_vertex(g, cycle, AbsorbingPathRecord((1, 2, 3, 4), (0, 1, 2), 6, (0, 0)))

    def test_segment_must_be_on_cycle(self, complete_collection):
        g = complete_collection(7)
        cycle = cycle_from_sequence([1, 2, 3, 4, 5, 6], [0, 1, 2, 3, 4, 5])
        record = AbsorbingPathRecord((1, 3, 2, 4), (0, 1, 2), 6, (0, 0))
        with pytest.raises(PreconditionError):
            absorb_vertex(g, cycle, record)

    def test_path_colors_must_be_fresh(self, complete_collection):
        g = complete_collection(8)
        cycle = cycle_from_sequence([2, 3, 4, 5, 6, 7], [0, 1, 2, 3, 4, 5])
        record = AbsorbingPathRecord((2, 3, 4, 5), (0, 1, 2), 6, (0, 1))
        with pytest.raises(PreconditionError):
            absorb_path(g, cycle, record, path_from_sequence([0, 1], [3]))


# =============================================================================
# ABSORBING CYCLES
# =============================================================================


def _brute_force_windows(starts: int, length: int) -> int:
    chosen = [s for s in range(length) if (starts >> s) & 1]
    best = 0
    for size in range(1, len(chosen) + 1):
        for subset in combinations(chosen, size):
            if all(
                (b - a) % length >= 4 and (a - b) % length >= 4 for a, b in combinations(subset, 2)
            ):
                best = size
                break
    return best


@pytest.mark.unit
class TestDisjointWindows:
    """Disjoint windows of four on a cycle"""

    def test_full_cycle(self):
        assert max_disjoint_windows((1 << 12) - 1, 12) == 3
        assert max_disjoint_windows((1 << 11) - 1, 11) == 2

    def test_too_short(self):
        assert max_disjoint_windows(0b111, 3) == 0

    @PROPERTY_SETTINGS
    @given(st.integers(4, 12), st.data())
    def test_matches_brute_force(self, length, data):
        starts = data.draw(st.integers(0, (1 << length) - 1))
        assert max_disjoint_windows(starts, length) == _brute_force_windows(starts, length)


@pytest.mark.unit
class TestAbsorbingCycleCheck:
    """Exception counting against the absorbing conditions"""

    def setup_method(self):
        self.g = GraphCollection(8, (complete_rows(8),) * 8)
        self.cycle = cycle_from_sequence([0, 1, 2, 3, 4, 5], [0, 1, 2, 3, 4, 5])
        self.good = {6: frozenset(range(8)), 7: frozenset(range(8))}

    def test_trivial_requirement_holds(self):
        report = check_absorbing_cycle(
            self.g, self.cycle, [6, 7], 0, 0, delta=Fraction(1, 4), gamma=1, good=self.good
        )
        assert report.holds
        assert report.color_set_large_enough
        assert report.short_enough
        assert report.exceptional_pairs == {6: 0, 7: 0}
        assert report.condition_i_targeted is None
        assert report.to_dict()["condition_i_targeted"] is None

    def test_unreachable_requirement_counts_every_exception(self):
        report = check_absorbing_cycle(self.g, self.cycle, [6, 7], 0, 1, good=self.good)
        assert not report.condition_i
        assert not report.condition_ii
        assert report.exceptional_pairs == {6: 8, 7: 8}
        assert report.exceptional_vertices == {6: 8, 7: 8}

    def test_allowed_exceptions(self):
        report = check_absorbing_cycle(self.g, self.cycle, [6, 7], 1, 1, good=self.good)
        assert report.holds

    def test_size_flags(self):
        report = check_absorbing_cycle(
            self.g, self.cycle, [6, 7], 0, 0, delta=Fraction(1, 2), gamma=Fraction(1, 2), good=self.good
        )
        assert report.color_set_large_enough is False
        assert report.short_enough is False
        assert not report.holds

    def test_invalid_cycle(self):
        broken = cycle_from_sequence([0, 1, 2], [0, 0, 1])
        with pytest.raises(InvalidInputError):
            check_absorbing_cycle(self.g, broken, [6], 0, 0, good=self.good)


@pytest.mark.unit
class TestAbsorbingCycleDemo:
    """The strongly stable construction"""

    def test_unstable_collection_is_refused(self):
        demo = build_absorbing_cycle_demo(make_H(8, 8, 0), 0.5, 0.5, 0.05, 0.2, 0.1)
        assert not demo.built
        assert demo.stage == "stability"
        assert demo.verdict.status == StabilityStatus.NOT_STABLE

    def test_weakly_stable_collection_is_refused(self, complete_collection):
        demo = build_absorbing_cycle_demo(
            complete_collection(12),
            0.5,
            0.5,
            0.05,
            0.2,
            0.1,
            verdict=_verdict(StabilityStatus.WEAKLY_STABLE, []),
        )
        assert demo.stage == "stability"
        assert "weakly stable" in demo.diagnosis

    def test_too_few_nice_colors(self, complete_collection):
        demo = build_absorbing_cycle_demo(
            complete_collection(12), 1, 0.5, 0.05, 0.2, 0.1, verdict=_verdict(StabilityStatus.STRONGLY_STABLE, [0])
        )
        assert demo.stage == "colors"

    def test_scale_too_small(self, complete_collection):
        demo = build_absorbing_cycle_demo(
            complete_collection(12),
            0.25,
            0.5,
            0.05,
            0.2,
            0.1,
            verdict=_verdict(StabilityStatus.STRONGLY_STABLE, range(12)),
        )
        assert demo.stage == "parameters"

    def test_rejects_bad_lambda(self, complete_collection):
        with pytest.raises(InvalidInputError):
            build_absorbing_cycle_demo(complete_collection(8), 0, 0.5, 0.05, 0.2, 0.1)

    @pytest.mark.slow
    def test_complete_collection_builds_a_cycle(self, complete_collection):
        g = complete_collection(60)
        demo = build_absorbing_cycle_demo(
            g,
            0.5,
            0.5,
            0.05,
            0.2,
            0.1,
            seed=4,
            restarts=2,
            verdict=_verdict(StabilityStatus.STRONGLY_STABLE, range(60)),
        )
        assert demo.built
        assert demo.stage == "complete"
        assert len(demo.cycle) == 6 * demo.matching.size
        assert validate(g, demo.cycle)
        assert demo.report is not None
        assert demo.report.condition_i_targeted is False
        assert demo.to_dict()["report"]["condition_i_targeted"] is False

    @pytest.mark.slow
    def test_classified_complete_collection_builds_a_cycle(self, complete_collection):
        g = complete_collection(60)
        demo = build_absorbing_cycle_demo(g, 0.3, 0.5, 0.05, 0.2, 0.1, seed=4)
        assert demo.verdict.status == StabilityStatus.STRONGLY_STABLE
        assert demo.verdict.nice_colors == frozenset(range(60))
        assert demo.built
        assert len(demo.cycle) == 6 * demo.matching.size
        assert validate(g, demo.cycle)
        assert demo.report.condition_i_targeted is False
