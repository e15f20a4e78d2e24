"""
Integration tests for the experiment harness

Each run binds constructions, the solver, certificates and the structural
analysis together and is stored through a report repository.
"""

import math
import random

import pytest

from rainbowham.constructions import (
    make_balanced_bipartite,
    make_H,
    make_pattern_collection,
    make_two_cliques,
    perturb,
    random_min_degree_collection,
)
from rainbowham.core.types import Pattern, PartitionKind, SearchStatus, StabilityStatus, Target
from rainbowham.harness import (
    run_dirac_sampling,
    run_extremal_sweep,
    run_matching_lemma,
    run_stability_boundary,
    weakly_stable_mixture,
)
from rainbowham.solver import brute_force_oracle, find_transversal_hamilton_cycle, find_transversal_hamilton_path
from rainbowham.structure import characteristic_partition, check_crossing_observation


@pytest.mark.integration
class TestExtremalSweep:
    """No extremal family member has a rainbow Hamilton cycle"""

    def test_small_sweep_passes_and_is_saved(self, report_repository):
        report = run_extremal_sweep(6, 4, repository=report_repository)
        assert report.passed, report.failures
        assert report.aggregates["instances"] == 29
        assert report_repository.list_reports() == ["extremal-sweep-n4-6"]

    def test_negative_claims_are_doubly_backed(self):
        report = run_extremal_sweep(5, 5)
        for instance_id in ("H-n5-a4-b1", "H-n5-a5-b0"):
            record = report.instances[instance_id]
            assert record["exists"] is False
            assert record["backing"] == ["solver_exhausted", "certificate_verified"]
        assert report.instances["half-split-path-n5-complete"]["target"] == Target.PATH.value

    def test_reports_are_reproducible(self):
        assert run_extremal_sweep(5, 4).to_json() == run_extremal_sweep(5, 4).to_json()

    @pytest.mark.slow
    def test_worker_pool_gives_the_same_report(self):
        assert run_extremal_sweep(6, 5, workers=2).to_json() == run_extremal_sweep(6, 5).to_json()

    @pytest.mark.slow
    def test_path_variant_beyond_the_sweep(self):
        outcome = find_transversal_hamilton_path(make_H(10, 9, 0))
        assert outcome.status == SearchStatus.EXHAUSTED


@pytest.mark.integration
class TestDiracSampling:
    """Random collections above the degree threshold"""

    def test_sampling_report(self, report_repository):
        report = run_dirac_sampling(7, 5, seed=1, repository=report_repository)
        assert report.passed
        assert len(report.instances) == 5
        assert len(report.seeds) == 5
        assert 0 <= report.aggregates["found_rate_per_mille"] <= 1000
        assert report_repository.load("dirac-sampling-n7-s1") is not None

    def test_seed_determines_report(self):
        assert run_dirac_sampling(6, 3, seed=4).to_json() == run_dirac_sampling(6, 3, seed=4).to_json()


@pytest.mark.integration
class TestStabilityBoundary:
    """Verdicts of perturbed extremal collections"""

    def test_boundary_report(self):
        report = run_stability_boundary(8, [0, 2], restarts=2)
        assert sorted(report.instances) == [
            "EC1-e000",
            "EC1-e002",
            "EC2-e000",
            "EC2-e002",
            "mixture-e000",
            "mixture-e002",
        ]
        unperturbed = report.instances["EC1-e000"]
        assert unperturbed["agrees"]
        assert unperturbed["planted"] == StabilityStatus.NOT_STABLE.value
        assert unperturbed["distance_H"]["cost"] == 0
        for name in ("EC1", "EC2", "mixture"):
            assert f"flip_point_{name}" in report.aggregates
        assert "agreements" in report.aggregates


@pytest.mark.integration
class TestMatchingLemma:
    """Random transversal matchings at scale"""

    def test_runs_are_recorded(self, report_repository):
        report = run_matching_lemma(n=40, t=4, runs=3, repository=report_repository)
        assert sorted(report.instances) == ["run-000", "run-001", "run-002"]
        assert 0 <= report.aggregates["successes"] <= 3
        assert report.passed
        assert report_repository.list_reports() == [report.experiment_id]

    @pytest.mark.slow
    def test_guarantees_hold_at_scale(self):
        """n = 400, pairs, ten colors: nearly every run meets both guarantees"""
        report = run_matching_lemma(n=400, k=2, t=10, eps=0.25, runs=10, targets=3, seed=7)
        assert report.aggregates["successes"] >= 9
        for record in report.instances.values():
            assert record["size"] <= 10


@pytest.mark.integration
@pytest.mark.slow
class TestOracleAgreement:
    """The pruned search and plain enumeration agree"""

    @pytest.mark.parametrize("seed", range(200))
    def test_random_collections(self, seed):
        d = seed % 5
        p = (0.25, 0.4, 0.55, 0.7)[seed % 4]
        g = random_min_degree_collection(7, 7, d, seed, p=p)
        outcome = find_transversal_hamilton_cycle(g)
        assert outcome.status != SearchStatus.BUDGET_EXCEEDED
        assert (outcome.status == SearchStatus.FOUND) == brute_force_oracle(g, Target.CYCLE)


@pytest.mark.integration
@pytest.mark.slow
class TestStructureRecovery:
    """Partitions of planted extremal graphs above the exhaustive cap"""

    @pytest.mark.parametrize("n", [16, 20])
    def test_planted_partition_is_recovered(self, n):
        planted = [frozenset(range((n + 1) // 2)), frozenset(range((n + 1) // 2, n))]
        cases = [
            (make_two_cliques(n), PartitionKind.EC1_EXTREMAL),
            (make_balanced_bipartite(n), PartitionKind.EC2_EXTREMAL),
        ]
        for g, kind in cases:
            part = characteristic_partition(g, 0.2)
            assert part is not None
            assert part.kind == kind
            assert min(len(part.A ^ side) for side in planted) <= 2 * math.ceil(0.2 * n)

    def test_crossing_colors_meet_in_every_quarter(self):
        g = weakly_stable_mixture(20)
        assert check_crossing_observation(g, 0, 1, 0.05, 0.4)

    @pytest.mark.parametrize("n", [16, 20])
    def test_recovery_survives_a_few_toggles(self, n):
        """Up to eps^3 n^2 toggles keep the extremal witness below threshold"""
        planted = [frozenset(range((n + 1) // 2)), frozenset(range((n + 1) // 2, n))]
        bound = 2 * math.ceil(0.2 * n)
        cases = [
            (make_two_cliques(n), PartitionKind.EC1_EXTREMAL),
            (make_balanced_bipartite(n), PartitionKind.EC2_EXTREMAL),
        ]
        recovered = trials = 0
        for base, kind in cases:
            for seed in range(25):
                g = perturb(base, seed % 3, seed=seed)
                part = characteristic_partition(g, 0.2, seed=seed)
                trials += 1
                if part is None or part.kind != kind:
                    continue
                if min(len(part.A ^ side) for side in planted) <= bound:
                    recovered += 1
        assert recovered >= 0.95 * trials

    def test_crossing_observation_on_planted_pairs(self):
        """Two EC1 colors whose partitions split each other evenly"""
        n = 20
        for seed in range(50):
            rng = random.Random(seed)
            order = rng.sample(range(n), n)
            first, rest = order[: n // 2], order[n // 2 :]
            second = rng.sample(first, n // 4) + rng.sample(rest, n // 2 - n // 4)
            g = make_pattern_collection(n, [(Pattern.EC1, first), (Pattern.EC1, second)])
            assert check_crossing_observation(g, 0, 1, 0.05, 0.4), seed
