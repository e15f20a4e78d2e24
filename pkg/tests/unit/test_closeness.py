"""
Unit tests for distances and non-Hamiltonicity certificates
"""

import json
import random
from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import pytest

from rainbowham.closeness import (
    EdgeType,
    IndependentSetCertificate,
    ParityCertificate,
    distance_to_half_split,
    distance_to_H_family,
    find_independent_set_certificate,
    independent_set_certificate,
    load_certificate,
    parity_certificate,
    save_certificate,
    verify_certificate,
)
from rainbowham.closeness.certificates import (
    candidate_partitions,
    independence_threshold,
    parse_certificate,
)
from rainbowham.constructions import Bipartition, make_H, make_half_split, perturb
from rainbowham.core.collection import GraphCollection
from rainbowham.core.exceptions import (
    CertificateFormatError,
    InvalidInputError,
    SizeCapExceededError,
)
from rainbowham.core.types import AnalysisMode, BInternal, Target
from rainbowham.solver import brute_force_oracle

# =============================================================================
# DISTANCES
# =============================================================================


@pytest.mark.unit
class TestDistanceToH:
    """Labeled edit distance to H_a^b"""

    def test_member_has_distance_zero(self):
        report = distance_to_H_family(make_H(8, 5, 3))
        assert report.cost == 0
        assert report.exact
        assert report.target["A"] == [0, 1, 2, 3]
        assert (report.target["a"], report.target["b"]) == (5, 3)

    def test_perturbation_is_measured_exactly(self):
        g = perturb(make_H(8, 5, 3), 5, seed=2)
        report = distance_to_H_family(g)
        assert report.cost == 5
        assert report.normalized == Fraction(5, 512)

    def test_odd_b_requirement_flips_one_color(self):
        report = distance_to_H_family(make_H(8, 6, 2), require_b_odd=True)
        assert report.cost == 28
        assert report.target["b"] % 2 == 1

    def test_local_search_uses_planted_partition(self):
        report = distance_to_H_family(make_H(14, 7, 7), mode=AnalysisMode.LOCAL_SEARCH, restarts=3)
        assert report.cost == 0
        assert not report.exact
        assert report.mode == AnalysisMode.LOCAL_SEARCH

    def test_wrong_color_count(self):
        with pytest.raises(InvalidInputError):
            distance_to_H_family(make_H(8, 3, 3))

    def test_exhaustive_cap(self, complete_collection):
        with pytest.raises(SizeCapExceededError):
            distance_to_H_family(complete_collection(13), mode=AnalysisMode.EXHAUSTIVE)

    @pytest.mark.slow
    def test_local_search_never_beats_exhaustive(self):
        """Unlabelled perturbed members at n = 10: local search is an upper bound, nearly always tight"""
        tight = 0
        for seed in range(100):
            a = seed % 11
            planted = perturb(make_H(10, a, 10 - a), seed % 6, seed=seed)
            g = GraphCollection(10, planted.rows)
            exact = distance_to_H_family(g, mode=AnalysisMode.EXHAUSTIVE).cost
            local = distance_to_H_family(g, mode=AnalysisMode.LOCAL_SEARCH, seed=seed, restarts=5)
            assert local.cost >= exact
            tight += local.cost == exact
        assert tight >= 90


@pytest.mark.unit
class TestDistanceToHalfSplit:
    """Labeled edit distance to the half-split family"""

    def test_members_have_distance_zero(self):
        for flag in BInternal:
            report = distance_to_half_split(make_half_split(7, 7, flag))
            assert report.cost == 0
            assert report.target["A"] == [0, 1, 2, 3]

    def test_complete_collection(self, complete_collection):
        """Every color must lose the C(4, 2) edges inside A"""
        report = distance_to_half_split(complete_collection(7))
        assert report.cost == 7 * 6

    def test_too_small(self, complete_collection):
        with pytest.raises(InvalidInputError):
            distance_to_half_split(complete_collection(2))

    def test_local_search_is_an_upper_bound(self):
        for seed in range(10):
            planted = perturb(make_half_split(8, 8, BInternal.EMPTY), 3, seed=seed)
            g = GraphCollection(8, planted.rows)
            exact = distance_to_half_split(g, mode=AnalysisMode.EXHAUSTIVE).cost
            local = distance_to_half_split(g, mode=AnalysisMode.LOCAL_SEARCH, seed=seed, restarts=5).cost
            assert local >= exact


def _edits_touching(part_size: int, n: int, k: int, seed: int):
    """k distinct color-edges with an end in {0, ..., part_size - 1}"""
    pool = [(u, v, c) for c in range(n) for u, v in combinations(range(n), 2) if u < part_size]
    return random.Random(seed).sample(pool, k)


@pytest.mark.unit
class TestEditDistanceExactness:
    """Exhaustive distances count planted toggles exactly"""

    @pytest.mark.parametrize("n", range(4, 11))
    def test_H_family(self, n):
        for k in range(6 if n > 4 else 4):
            a = (n + k) % (n + 1)
            g = perturb(make_H(n, a, n - a), k, seed=10 * n + k)
            report = distance_to_H_family(g, mode=AnalysisMode.EXHAUSTIVE)
            assert report.exact
            assert report.cost == k, (n, a, k)

    @pytest.mark.parametrize("n", range(4, 11))
    def test_half_split_family(self, n):
        size = n // 2 + 1
        for k in range(6):
            flag = BInternal.COMPLETE if k % 2 else BInternal.EMPTY
            g = make_half_split(n, n, flag).with_toggles(_edits_touching(size, n, k, 10 * n + k))
            report = distance_to_half_split(g, mode=AnalysisMode.EXHAUSTIVE)
            assert report.exact
            assert report.cost == k, (n, flag, k)


# =============================================================================
# PARITY CERTIFICATES
# =============================================================================


@pytest.mark.unit
class TestParityCertificate:
    """Parity obstructions on a shared bipartition"""

    def test_odd_b_is_certified(self):
        g = make_H(6, 5, 1)
        cert = parity_certificate(g)
        assert cert is not None
        assert cert.crossing_count == 1
        assert cert.type_of == (EdgeType.TYPE1,) * 5 + (EdgeType.TYPE2,)
        assert verify_certificate(g, cert)

    def test_b_zero_is_certified(self):
        cert = parity_certificate(make_H(6, 6, 0))
        assert cert is not None
        assert cert.crossing_count == 0

    def test_even_b_has_no_certificate(self):
        assert parity_certificate(make_H(6, 4, 2)) is None

    def test_empty_color_absorbs_parity(self):
        g = make_H(6, 3, 2).with_color((0,) * 6)
        cert = parity_certificate(g)
        assert cert is not None
        assert cert.crossing_count == 3
        assert cert.type_of[5] == EdgeType.TYPE2
        assert verify_certificate(g, cert)

    def test_candidates_start_with_planted_partition(self):
        candidates = candidate_partitions(make_H(6, 5, 1))
        assert candidates[0].A == frozenset({0, 1, 2})

    def test_wrong_color_count(self):
        with pytest.raises(InvalidInputError):
            parity_certificate(make_H(6, 2, 1))

    def test_given_partition_must_cover_vertices(self):
        """Copies of C5 are Hamiltonian; a partial split must not certify them"""
        g = GraphCollection.from_edge_lists(5, [[(i, (i + 1) % 5) for i in range(5)]] * 5)
        with pytest.raises(InvalidInputError):
            parity_certificate(g, Bipartition(frozenset({0}), frozenset({2})))
        with pytest.raises(InvalidInputError):
            parity_certificate(g, Bipartition(frozenset({0, 1}), frozenset({2, 3, 4, 7})))

    def test_given_partition_is_used(self):
        g = make_H(6, 5, 1)
        cert = parity_certificate(g, Bipartition.from_part(6, {0, 1, 2}))
        assert cert is not None
        assert verify_certificate(g, cert)


@pytest.mark.unit
class TestVerification:
    """Every invariant is re-checked and named"""

    def setup_method(self):
        self.g = make_H(6, 5, 1)
        self.cert = parity_certificate(self.g)

    def test_wrong_count(self):
        check = verify_certificate(self.g, replace(self.cert, crossing_count=3))
        assert not check
        assert check.invariant == "crossing_count"

    def test_mislabeled_color(self):
        tags = (EdgeType.TYPE2,) + self.cert.type_of[1:]
        check = verify_certificate(self.g, replace(self.cert, type_of=tags, crossing_count=2))
        assert check.invariant == "type2_color_internal"

    def test_type1_crossing(self):
        tags = self.cert.type_of[:5] + (EdgeType.TYPE1,)
        check = verify_certificate(self.g, replace(self.cert, type_of=tags, crossing_count=0))
        assert check.invariant == "type1_color_crosses"

    def test_broken_partition(self):
        cert = replace(self.cert, B=frozenset({2, 3, 4, 5}))
        assert verify_certificate(self.g, cert).invariant == "partition"

    def test_even_nonzero_crossing(self):
        g = make_H(6, 4, 2)
        cert = ParityCertificate(
            frozenset({0, 1, 2}),
            frozenset({3, 4, 5}),
            (EdgeType.TYPE1,) * 4 + (EdgeType.TYPE2,) * 2,
            2,
        )
        assert verify_certificate(g, cert).invariant == "crossing_parity"


# =============================================================================
# INDEPENDENT SET CERTIFICATES
# =============================================================================


@pytest.mark.unit
class TestIndependentSetCertificate:
    """Large common independent sets"""

    def test_thresholds(self):
        assert independence_threshold(7, Target.CYCLE) == 4
        assert independence_threshold(7, Target.PATH) == 5
        assert independence_threshold(6, Target.PATH) == 4

    def test_half_split_is_certified(self):
        g = make_half_split(7, 7, BInternal.COMPLETE)
        cert = find_independent_set_certificate(g)
        assert cert is not None
        assert cert.A == frozenset({0, 1, 2, 3})
        assert verify_certificate(g, cert)

    def test_path_variant(self):
        g = make_half_split(7, 6, BInternal.EMPTY, part_size=5)
        cert = find_independent_set_certificate(g, Target.PATH)
        assert cert is not None
        assert len(cert.A) == 5

    def test_complete_collection_has_none(self, complete_collection):
        assert find_independent_set_certificate(complete_collection(7)) is None

    def test_explicit_set(self):
        g = make_half_split(7, 7)
        assert independent_set_certificate(g, [0, 1, 2, 3]) is not None
        assert independent_set_certificate(g, [0, 1, 2]) is None
        with pytest.raises(InvalidInputError):
            independent_set_certificate(g, [0, 9])

    def test_failed_checks(self, complete_collection):
        g = complete_collection(7)
        check = verify_certificate(g, IndependentSetCertificate(frozenset({0, 1, 2, 3}), Target.CYCLE))
        assert check.invariant == "independence"
        check = verify_certificate(g, IndependentSetCertificate(frozenset({0, 1}), Target.CYCLE))
        assert check.invariant == "set_size"


@pytest.mark.unit
@pytest.mark.slow
class TestCertificateSoundness:
    """Perturbed extremal collections: a verified certificate always means no rainbow Hamilton cycle"""

    def test_fuzzed_collections(self):
        certified = 0
        for seed in range(100):
            n = 6 + seed % 2
            if (seed // 2) % 2 == 0:
                a = seed % (n + 1)
                base = make_H(n, a, n - a)
            else:
                base = make_half_split(n, n, BInternal.COMPLETE if seed % 3 else BInternal.EMPTY)
            g = perturb(base, (seed // 4) % 3, seed=seed)
            found = [parity_certificate(g), find_independent_set_certificate(g)]
            for cert in (c for c in found if c is not None):
                assert verify_certificate(g, cert), (seed, cert)
                assert not brute_force_oracle(g, Target.CYCLE), seed
                certified += 1
        assert certified >= 10


# =============================================================================
# DOCUMENTS
# =============================================================================


@pytest.mark.unit
class TestCertificateDocuments:
    """Certificate files"""

    def test_save_and_load(self, temp_dir):
        cert = parity_certificate(make_H(6, 5, 1))
        path = temp_dir / "cert.json"
        save_certificate(cert, path)
        assert load_certificate(path) == cert

    def test_malformed_json(self):
        with pytest.raises(CertificateFormatError, match="line 1"):
            parse_certificate("{not json")

    def test_unknown_kind(self):
        with pytest.raises(CertificateFormatError):
            parse_certificate(json.dumps({"version": 1, "kind": "magic", "A": [0]}))

    def test_missing_file(self, temp_dir):
        with pytest.raises(CertificateFormatError, match="cannot read"):
            load_certificate(temp_dir / "nothing.json")
