"""
Report Assembly and Audit
=========================

Instance records are plain dicts so that reports serialize without
custom encoders. Every record embeds its collection, which lets
``audit_report`` re-check a report on its own:

- every witness must validate against the embedded collection
- every "does not exist" claim must name a backing: an exhausted exact
  search or a certificate that verified
"""

import json
from typing import Any, Dict, Iterable, List, Optional

from ..core.codec import collection_to_dict, parse_collection
from ..core.collection import GraphCollection, TransversalSubgraph, validate
from ..core.exceptions import RainbowHamError
from ..core.structured_logger import get_logger
from ..core.types import SearchStatus, SubgraphKind, Target
from ..persistence.repositories import ExperimentReport
from ..solver.budget import SearchOutcome

logger = get_logger("harness.report")

BACKING_SOLVER = "solver_exhausted"
BACKING_CERTIFICATE = "certificate_verified"
NEGATIVE_BACKINGS = frozenset({BACKING_SOLVER, BACKING_CERTIFICATE})


def search_record(
    g: GraphCollection,
    target: Target,
    outcome: SearchOutcome,
    expected: Optional[bool] = None,
    timing: bool = False,
) -> Dict[str, Any]:
    """
    Record of one existence question. ``exists`` is True, False or None
    (budget exceeded); a False answer from the solver carries the
    ``solver_exhausted`` backing.
    """
    target = Target(target)
    stats = outcome.stats.to_dict()
    if not timing:
        stats.pop("elapsed_ms", None)
    exists: Optional[bool] = None
    backing: List[str] = []
    if outcome.status == SearchStatus.FOUND:
        exists = True
    elif outcome.status == SearchStatus.EXHAUSTED:
        exists = False
        backing.append(BACKING_SOLVER)
    return {
        "collection": collection_to_dict(g),
        "target": target.value,
        "status": outcome.status.value,
        "exists": exists,
        "expected": expected,
        "backing": backing,
        "witness": [list(e) for e in outcome.witness.edges] if outcome.witness else None,
        "stats": stats,
    }


def _witness_of(record: Dict[str, Any]) -> TransversalSubgraph:
    kind = SubgraphKind.CYCLE if record.get("target") == Target.CYCLE.value else SubgraphKind.PATH
    return TransversalSubgraph(tuple(tuple(e) for e in record["witness"]), kind)


def audit_report(report: ExperimentReport) -> List[str]:
    """Problems found by re-checking every witness and every negative claim"""
    problems = []
    for instance_id, record in sorted(report.instances.items()):
        if record.get("witness") is not None:
            try:
                g = parse_collection(json.dumps(record["collection"]))
                check = validate(g, _witness_of(record))
            except (RainbowHamError, KeyError, TypeError, ValueError) as e:
                problems.append(f"{instance_id}: witness could not be checked ({e})")
                continue
            if not check:
                problems.append(f"{instance_id}: witness fails validation ({check.reason})")
        if record.get("exists") is False and not NEGATIVE_BACKINGS & set(record.get("backing", [])):
            problems.append(f"{instance_id}: negative claim without backing")
    return problems


def finalize(report: ExperimentReport, extra_aggregates: Optional[Dict[str, int]] = None) -> ExperimentReport:
    """Fill status aggregates and run the audit; audit problems become failures"""
    report.findings = sorted(set(report.findings))
    counts: Dict[str, int] = {"instances": len(report.instances)}
    for record in report.instances.values():
        status = record.get("status")
        if status is not None:
            counts[status] = counts.get(status, 0) + 1
    counts["findings"] = len(report.findings)
    counts.update(extra_aggregates or {})
    problems = audit_report(report)
    for problem in problems:
        logger.error("Report audit failed", experiment=report.experiment_id, problem=problem)
        instance_id = problem.split(":", 1)[0]
        if instance_id not in report.failures:
            report.failures.append(instance_id)
    report.failures = sorted(set(report.failures))
    counts["failures"] = len(report.failures)
    report.aggregates = dict(sorted({**report.aggregates, **counts}.items()))
    return report


def merge_records(records: Iterable[tuple]) -> Dict[str, Dict[str, Any]]:
    """Instances keyed by id and sorted, whatever order they arrived in"""
    return {instance_id: record for instance_id, record in sorted(records, key=lambda item: item[0])}


__all__ = [
    "BACKING_SOLVER",
    "BACKING_CERTIFICATE",
    "NEGATIVE_BACKINGS",
    "search_record",
    "audit_report",
    "finalize",
    "merge_records",
]
