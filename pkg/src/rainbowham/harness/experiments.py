"""
Desk-Scale Experiments
======================

Reproducible sweeps that bind the solver, the structural analysis, the
closeness measures and the absorption toolkit together:

- ``run_extremal_sweep``: the extremal families have no rainbow Hamilton
  cycle (or path); solver and certificate must agree
- ``run_dirac_sampling``: random collections above the Dirac threshold
- ``run_stability_boundary``: stability verdicts and family distances of
  perturbed extremal collections against their planted truth
- ``run_matching_lemma``: size and coverage guarantees of the random
  transversal matching

Exact finite statements that fail are report failures. Asymptotic
statements that fail at desk scale are recorded as findings.

Instances are described by picklable specs and may run on a process
pool; the report is keyed by instance id, so the result does not depend
on scheduling.
"""

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..absorption.kgraph import CompleteKGraph, DirectedKGraphCollection, random_transversal_matching
from ..closeness.certificates import (
    find_independent_set_certificate,
    parity_certificate,
    verify_certificate,
)
from ..closeness.distance import distance_to_H_family, distance_to_half_split
from ..constructions.families import make_H, make_half_split, make_pattern_collection
from ..constructions.random_graphs import perturb, random_min_degree_collection
from ..core.codec import collection_to_dict
from ..core.collection import GraphCollection
from ..core.exceptions import InvalidInputError, SizeCapExceededError
from ..core.structured_logger import TraceContext, get_logger
from ..core.types import AnalysisMode, BInternal, Pattern, StabilityStatus, Target
from ..persistence.repositories import ExperimentReport, ReportRepository
from ..solver.budget import SearchBudget
from ..solver.hamilton import find_transversal_hamilton_cycle, find_transversal_hamilton_path
from ..structure.constants import as_fraction
from ..structure.stability import classify_stability
from .report import BACKING_CERTIFICATE, finalize, merge_records, search_record

logger = get_logger("harness.experiments")

SWEEP_MAX_N = 9
DIRAC_MAX_N = 9
BOUNDARY_MAX_N = 12


@dataclass(frozen=True)
class InstanceSpec:
    """Everything a worker needs to rebuild and run one instance"""

    instance_id: str
    family: str
    params: Dict[str, Any] = field(default_factory=dict)
    target: Target = Target.CYCLE
    expected: Optional[bool] = None
    certificate: Optional[str] = None


def _build(family: str, params: Dict[str, Any]) -> GraphCollection:
    if family == "H":
        return make_H(params["n"], params["a"], params["b"])
    if family == "half_split":
        return make_half_split(
            params["n"], params["s"], BInternal(params["b_internal"]), params.get("part_size")
        )
    if family == "random_min_degree":
        return random_min_degree_collection(params["n"], params["s"], params["d"], params["seed"])
    raise InvalidInputError(f"unknown instance family {family!r}")


def _sweep_budget(budget: Optional[SearchBudget]) -> SearchBudget:
    """The solver decides on its own; certificates are checked separately"""
    budget = budget or SearchBudget()
    return SearchBudget(
        node_limit=budget.node_limit,
        time_limit_ms=budget.time_limit_ms,
        deterministic=True,
        threads=1,
        parity_precheck=False,
    )


def run_instance(spec: InstanceSpec, budget: SearchBudget, timing: bool = False) -> Tuple[str, Dict[str, Any]]:
    """Solve one instance and attach its certificate; returns (id, record)"""
    g = _build(spec.family, spec.params)
    if spec.target == Target.CYCLE:
        outcome = find_transversal_hamilton_cycle(g, budget)
    else:
        outcome = find_transversal_hamilton_path(g, budget)
    record = search_record(g, spec.target, outcome, spec.expected, timing)

    if spec.certificate is not None:
        if spec.certificate == "parity":
            certificate = parity_certificate(g)
        else:
            certificate = find_independent_set_certificate(g, spec.target)
        verified = certificate is not None and bool(verify_certificate(g, certificate))
        record["certificate"] = {"kind": spec.certificate, "verified": verified}
        if verified:
            record["backing"].append(BACKING_CERTIFICATE)
    return spec.instance_id, record


def _run_all(
    specs: Sequence[InstanceSpec], budget: SearchBudget, workers: int, timing: bool
) -> Dict[str, Dict[str, Any]]:
    if workers <= 1 or len(specs) <= 1:
        return merge_records(run_instance(spec, budget, timing) for spec in specs)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run_instance, spec, budget, timing) for spec in specs]
        return merge_records(future.result() for future in futures)


def _judge_exact(report: ExperimentReport) -> None:
    """An expected negative must be confirmed by the solver and, where given, the certificate"""
    for instance_id, record in report.instances.items():
        if record["expected"] is None:
            continue
        if record["exists"] is None:
            report.findings.append(instance_id)
            continue
        disagrees = record["exists"] != record["expected"]
        certificate = record.get("certificate")
        if certificate is not None and certificate["verified"] == bool(record["exists"]):
            disagrees = True
        if disagrees:
            report.failures.append(instance_id)


def _finish(
    report: ExperimentReport,
    started: float,
    timing: bool,
    repository: Optional[ReportRepository],
    extra: Optional[Dict[str, int]] = None,
) -> ExperimentReport:
    if timing:
        report.wall_clock_ms = (time.monotonic() - started) * 1000.0
    finalize(report, extra)
    logger.info(
        "Experiment finished",
        experiment=report.experiment_id,
        instances=len(report.instances),
        findings=len(report.findings),
        failures=len(report.failures),
    )
    if repository is not None:
        repository.save(report)
    return report


# =============================================================================
# EXTREMAL SWEEP
# =============================================================================


def extremal_specs(n_max: int, n_min: int = 4) -> List[InstanceSpec]:
    specs = []
    for n in range(n_min, n_max + 1):
        for a in range(n + 1):
            b = n - a
            negative = b % 2 == 1 or b == 0
            specs.append(
                InstanceSpec(
                    f"H-n{n}-a{a}-b{b}",
                    "H",
                    {"n": n, "a": a, "b": b},
                    Target.CYCLE,
                    False if negative else None,
                    "parity" if negative else None,
                )
            )
        for flag in BInternal:
            specs.append(
                InstanceSpec(
                    f"half-split-n{n}-{flag.value}",
                    "half_split",
                    {"n": n, "s": n, "b_internal": flag.value},
                    Target.CYCLE,
                    False,
                    "independent_set",
                )
            )
            if n % 2 == 1:
                specs.append(
                    InstanceSpec(
                        f"half-split-path-n{n}-{flag.value}",
                        "half_split",
                        {"n": n, "s": n - 1, "b_internal": flag.value, "part_size": (n + 1) // 2 + 1},
                        Target.PATH,
                        False,
                        "independent_set",
                    )
                )
        specs.append(
            InstanceSpec(f"H-path-n{n}-a{n - 1}-b0", "H", {"n": n, "a": n - 1, "b": 0}, Target.PATH, False)
        )
    return specs


def run_extremal_sweep(
    n_max: int,
    n_min: int = 4,
    budget: Optional[SearchBudget] = None,
    workers: int = 1,
    timing: bool = False,
    repository: Optional[ReportRepository] = None,
) -> ExperimentReport:
    """
    Every H_a^b with b odd or b = 0 and every half-split collection has
    no rainbow Hamilton cycle; the odd-n half-split path variant and
    H_{n-1}^0 have no rainbow Hamilton path. Other H_a^b outcomes are
    recorded.

    Raises:
        SizeCapExceededError: if n_max > 9
    """
    if n_max > SWEEP_MAX_N:
        raise SizeCapExceededError(n_max, SWEEP_MAX_N, "run_extremal_sweep")
    if n_min < 3 or n_min > n_max:
        raise InvalidInputError(f"need 3 <= n_min <= n_max, got {n_min}, {n_max}")
    started = time.monotonic()
    experiment_id = f"extremal-sweep-n{n_min}-{n_max}"
    with TraceContext(run=experiment_id):
        specs = extremal_specs(n_max, n_min)
        report = ExperimentReport(
            experiment_id,
            {"n_min": n_min, "n_max": n_max, "budget": _sweep_budget(budget).to_dict()},
        )
        report.instances = _run_all(specs, _sweep_budget(budget), workers, timing)
        _judge_exact(report)
        return _finish(report, started, timing, repository)


# =============================================================================
# DIRAC SAMPLING
# =============================================================================


def run_dirac_sampling(
    n: int,
    trials: int,
    seed: int = 0,
    budget: Optional[SearchBudget] = None,
    workers: int = 1,
    timing: bool = False,
    repository: Optional[ReportRepository] = None,
) -> ExperimentReport:
    """
    Sample ``trials`` collections of n graphs with minimum degree at
    least ceil(n/2) and search each for a rainbow Hamilton cycle.
    Exhausted instances are findings, kept in full in the report.

    Raises:
        SizeCapExceededError: if n > 9
    """
    if n > DIRAC_MAX_N:
        raise SizeCapExceededError(n, DIRAC_MAX_N, "run_dirac_sampling")
    if n < 3 or trials < 1:
        raise InvalidInputError(f"need n >= 3 and trials >= 1, got n = {n}, trials = {trials}")
    started = time.monotonic()
    experiment_id = f"dirac-sampling-n{n}-s{seed}"
    with TraceContext(run=experiment_id):
        rng = random.Random(seed)
        seeds = [rng.randrange(2**31) for _ in range(trials)]
        d = math.ceil(n / 2)
        specs = [
            InstanceSpec(
                f"dirac-n{n}-t{index:04d}",
                "random_min_degree",
                {"n": n, "s": n, "d": d, "seed": trial_seed},
            )
            for index, trial_seed in enumerate(seeds)
        ]
        report = ExperimentReport(
            experiment_id,
            {"n": n, "trials": trials, "seed": seed, "min_degree": d, "budget": _sweep_budget(budget).to_dict()},
            seeds,
        )
        report.instances = _run_all(specs, _sweep_budget(budget), workers, timing)
        for instance_id, record in report.instances.items():
            if record["exists"] is False:
                report.findings.append(instance_id)
                logger.warning("Dirac collection without rainbow Hamilton cycle", instance=instance_id)
        found = sum(1 for r in report.instances.values() if r["exists"] is True)
        return _finish(report, started, timing, repository, {"found_rate_per_mille": found * 1000 // trials})


# =============================================================================
# STABILITY BOUNDARY
# =============================================================================


def weakly_stable_mixture(n: int) -> GraphCollection:
    """
    n EC1 colors split between two partitions that cross: the first half
    {0, ..., ceil(n/2)-1}, the second the even vertices.
    """
    first = list(range((n + 1) // 2))
    second = list(range(0, n, 2))
    colors = [(Pattern.EC1, first if c % 2 == 0 else second) for c in range(n)]
    return make_pattern_collection(n, colors)


def _boundary_bases(n: int) -> Dict[str, Tuple[GraphCollection, StabilityStatus]]:
    return {
        "EC1": (make_H(n, n, 0), StabilityStatus.NOT_STABLE),
        "EC2": (make_H(n, 0, n), StabilityStatus.NOT_STABLE),
        "mixture": (weakly_stable_mixture(n), StabilityStatus.WEAKLY_STABLE),
    }


def run_stability_boundary(
    n: int,
    edit_grid: Sequence[int],
    seed: int = 0,
    gamma=0.5,
    alpha=0.05,
    eps=0.2,
    delta=0.1,
    mode: AnalysisMode = AnalysisMode.AUTO,
    restarts: int = 20,
    timing: bool = False,
    repository: Optional[ReportRepository] = None,
) -> ExperimentReport:
    """
    Perturb EC1-, EC2- and mixture-based collections by every edit count
    of ``edit_grid``, classify stability, measure the distances to both
    families and compare with the planted truth. The first edit count at
    which a base's verdict changes is its flip point (-1 if none).

    Raises:
        SizeCapExceededError: if n > 12
    """
    if n > BOUNDARY_MAX_N:
        raise SizeCapExceededError(n, BOUNDARY_MAX_N, "run_stability_boundary")
    if n < 4 or any(e < 0 for e in edit_grid):
        raise InvalidInputError(f"need n >= 4 and non-negative edits, got n = {n}, grid = {list(edit_grid)}")
    started = time.monotonic()
    experiment_id = f"stability-boundary-n{n}-s{seed}"
    with TraceContext(run=experiment_id):
        grid = sorted(set(edit_grid))
        report = ExperimentReport(
            experiment_id,
            {
                "n": n,
                "edit_grid": grid,
                "seed": seed,
                "gamma": str(as_fraction(gamma)),
                "alpha": str(as_fraction(alpha)),
                "eps": str(as_fraction(eps)),
                "delta": str(as_fraction(delta)),
                "mode": AnalysisMode(mode).value,
                "restarts": restarts,
            },
            [seed],
        )
        flips: Dict[str, int] = {}
        agreements = 0
        for name, (base, truth) in _boundary_bases(n).items():
            baseline: Optional[StabilityStatus] = None
            flips[f"flip_point_{name}"] = -1
            for edits in grid:
                g = perturb(base, edits, seed + edits)
                verdict = classify_stability(g, gamma, alpha, eps, delta, mode, seed, restarts)
                h_distance = distance_to_H_family(g, mode=mode, seed=seed)
                half_distance = distance_to_half_split(g, mode=mode, seed=seed)
                agree = verdict.status == truth
                agreements += agree
                instance_id = f"{name}-e{edits:03d}"
                report.instances[instance_id] = {
                    "collection": collection_to_dict(g),
                    "base": name,
                    "edits": edits,
                    "planted": truth.value,
                    "verdict": verdict.to_dict(),
                    "agrees": agree,
                    "distance_H": h_distance.to_dict(),
                    "distance_half_split": half_distance.to_dict(),
                }
                if not agree:
                    report.findings.append(instance_id)
                if baseline is None:
                    baseline = verdict.status
                elif verdict.status != baseline and flips[f"flip_point_{name}"] < 0:
                    flips[f"flip_point_{name}"] = edits
        return _finish(report, started, timing, repository, {**flips, "agreements": agreements})


# =============================================================================
# MATCHING LEMMA
# =============================================================================


def run_matching_lemma(
    n: int = 400,
    k: int = 2,
    t: int = 10,
    eps=0.25,
    runs: int = 10,
    targets: int = 1,
    seed: int = 0,
    rounds: int = 20,
    timing: bool = False,
    repository: Optional[ReportRepository] = None,
) -> ExperimentReport:
    """
    Random transversal matchings over t complete k-graphs with complete
    targets. A run succeeds when its matching meets both guarantees; the
    success count is aggregated. Unmet guarantees are findings.
    """
    if runs < 1 or t < 1 or targets < 0:
        raise InvalidInputError(f"need runs >= 1, t >= 1, targets >= 0, got {runs}, {t}, {targets}")
    started = time.monotonic()
    experiment_id = f"matching-lemma-n{n}-k{k}-t{t}-s{seed}"
    with TraceContext(run=experiment_id):
        rng = random.Random(seed)
        seeds = [rng.randrange(2**31) for _ in range(runs)]
        hosts = DirectedKGraphCollection([CompleteKGraph(n, k) for _ in range(t)])
        goals = DirectedKGraphCollection([CompleteKGraph(n, k) for _ in range(targets)])
        report = ExperimentReport(
            experiment_id,
            {"n": n, "k": k, "t": t, "eps": str(as_fraction(eps)), "runs": runs, "targets": targets, "rounds": rounds},
            seeds,
        )
        successes = 0
        for index, run_seed in enumerate(seeds):
            result = random_transversal_matching(hosts, goals, eps, run_seed, rounds)
            instance_id = f"run-{index:03d}"
            report.instances[instance_id] = result.to_dict()
            if result.guaranteed:
                successes += 1
            else:
                report.findings.append(instance_id)
        return _finish(report, started, timing, repository, {"successes": successes})


__all__ = [
    "SWEEP_MAX_N",
    "DIRAC_MAX_N",
    "BOUNDARY_MAX_N",
    "InstanceSpec",
    "run_instance",
    "extremal_specs",
    "run_extremal_sweep",
    "run_dirac_sampling",
    "weakly_stable_mixture",
    "run_stability_boundary",
    "run_matching_lemma",
]
