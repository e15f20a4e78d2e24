"""
Unit tests for the extremal families and random generators
"""

import networkx as nx
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from rainbowham.constructions import (
    Bipartition,
    canonical_bipartition,
    make_balanced_bipartite,
    make_ec2_with_smaller_part_edges,
    make_H,
    make_half_split,
    make_pattern_collection,
    make_two_cliques,
    perturb,
    perturb_with_log,
    random_min_degree_collection,
    toggle_budget,
)
from rainbowham.core.collection import min_degree
from rainbowham.core.exceptions import InvalidInputError
from rainbowham.core.types import BInternal, Pattern

PROPERTY_SETTINGS = settings(
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


# =============================================================================
# EXTREMAL FAMILIES
# =============================================================================


@pytest.mark.unit
class TestExtremalGraphs:
    """EC1 and EC2"""

    def test_two_cliques_odd(self):
        g = make_two_cliques(7)
        components = sorted(len(c) for c in nx.connected_components(g.to_networkx(0)))
        assert components == [3, 4]
        assert g.edge_total(0) == 6 + 3
        assert g.planted_partition() == frozenset(range(4))

    def test_balanced_bipartite(self):
        g = make_balanced_bipartite(7)
        graph = g.to_networkx(0)
        assert nx.is_bipartite(graph)
        assert g.edge_total(0) == 4 * 3

    def test_bipartition_validation(self):
        with pytest.raises(InvalidInputError):
            Bipartition(frozenset({0, 1}), frozenset({1, 2}))
        with pytest.raises(InvalidInputError):
            Bipartition.from_part(5, [0], equitable=True)
        assert canonical_bipartition(5).A == frozenset({0, 1, 2})

    def test_too_small(self):
        with pytest.raises(InvalidInputError):
            make_two_cliques(1)


@pytest.mark.unit
class TestH:
    """H_a^b"""

    def test_layout(self):
        g = make_H(6, 2, 4)
        assert g.colors == 6
        assert g.edge_total(0) == 6
        assert g.edge_total(5) == 9
        assert g.meta["patterns"] == ["EC1", "EC1", "EC2", "EC2", "EC2", "EC2"]

    def test_minimum_degree_is_dirac_minus_one_at_even_n(self):
        assert min_degree(make_H(8, 4, 4)) == 3

    @pytest.mark.parametrize("n", range(2, 15))
    def test_minimum_degree_formula(self, n):
        for a in range(n + 1):
            expected = n // 2 - (1 if a > 0 else 0)
            assert min_degree(make_H(n, a, n - a)) == expected, (n, a)

    def test_rejects_bad_counts(self):
        with pytest.raises(InvalidInputError):
            make_H(6, -1, 7)
        with pytest.raises(InvalidInputError):
            make_H(6, 0, 0)


@pytest.mark.unit
class TestHalfSplit:
    """Half-split collections"""

    def test_independent_part(self):
        g = make_half_split(7, 7, BInternal.EMPTY)
        a = g.meta["independent_set"]
        assert a == [0, 1, 2, 3]
        for u in a:
            for v in a:
                assert not g.has_edge(0, u, v)
        assert g.has_edge(0, 0, 6)
        assert not g.has_edge(0, 5, 6)

    def test_complete_interior(self):
        g = make_half_split(7, 7, BInternal.COMPLETE)
        assert g.has_edge(3, 5, 6)

    def test_odd_minimum_degree_with_complete_interior(self):
        """The computed minimum degree at odd n is floor(n/2)"""
        assert min_degree(make_half_split(7, 7, BInternal.COMPLETE)) == 3

    def test_path_variant(self):
        g = make_half_split(7, 6, BInternal.EMPTY, part_size=5)
        assert g.colors == 6
        assert g.meta["params"]["part_size"] == 5

    def test_rejects_bad_part_size(self):
        with pytest.raises(InvalidInputError):
            make_half_split(6, 6, part_size=6)


@pytest.mark.unit
class TestPatternCollections:
    """Per-color partitions"""

    def test_crossing_partitions(self):
        g = make_pattern_collection(6, [(Pattern.EC1, [0, 1, 2]), (Pattern.EC2, [0, 2, 4])])
        assert g.has_edge(0, 0, 1)
        assert not g.has_edge(0, 0, 3)
        assert g.has_edge(1, 0, 1)
        assert not g.has_edge(1, 0, 2)

    def test_ec2_extra_edges_stay_in_smaller_part(self):
        g = make_ec2_with_smaller_part_edges(7, [(4, 5)])
        assert g.has_edge(0, 4, 5)
        with pytest.raises(InvalidInputError):
            make_ec2_with_smaller_part_edges(7, [(0, 1)])
        with pytest.raises(InvalidInputError):
            make_ec2_with_smaller_part_edges(6, [])


# =============================================================================
# RANDOM GENERATORS
# =============================================================================


@pytest.mark.unit
class TestPerturb:
    """Seeded toggles"""

    def test_exact_distance(self):
        g = make_H(6, 3, 3)
        h, log = perturb_with_log(g, 10, seed=4)
        assert len(log) == 10
        assert len(set(log)) == 10
        assert h.with_toggles(log) == g
        assert h.meta["perturbation"] == {"edits": 10, "seed": 4}

    def test_deterministic(self):
        g = make_H(6, 3, 3)
        assert perturb(g, 7, 1) == perturb(g, 7, 1)

    def test_capped_by_budget(self):
        g = make_two_cliques(3)
        assert toggle_budget(g) == 3
        h, log = perturb_with_log(g, 50, seed=0)
        assert len(log) == 3

    def test_zero_edits(self):
        g = make_H(5, 2, 3)
        assert perturb(g, 0, 9) == g

    def test_negative_edits(self):
        with pytest.raises(InvalidInputError):
            perturb(make_H(5, 2, 3), -1, 0)


@pytest.mark.unit
class TestRandomMinDegree:
    """Random collections with a degree floor"""

    @PROPERTY_SETTINGS
    @given(st.integers(4, 10), st.integers(0, 2**16))
    def test_degree_floor_holds(self, n, seed):
        d = (n + 1) // 2
        g = random_min_degree_collection(n, n, d, seed)
        assert g.colors == n
        assert min_degree(g) >= d

    def test_seed_determinism(self):
        assert random_min_degree_collection(8, 8, 4, 11) == random_min_degree_collection(8, 8, 4, 11)

    def test_degenerate_complete(self):
        g = random_min_degree_collection(4, 4, 3, 0)
        assert all(g.edge_total(c) == 6 for c in range(4))

    def test_rejects_impossible_degree(self):
        with pytest.raises(InvalidInputError):
            random_min_degree_collection(5, 5, 5, 0)
