"""
Abstract Repository Interfaces
==============================

Contract for persisting experiment reports. Reports are plain JSON
documents with sorted keys and a top-level ``"version"``, so two runs with
the same seeds and deterministic budgets produce identical bytes.
"""

import json
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ..core.exceptions import InvalidInputError

REPORT_VERSION = 1

_REPORT_ID = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


@dataclass
class ExperimentReport:
    """
    Outcome of one experiment run.

    ``instances`` is keyed by instance id, so assembly does not depend on
    the order in which instances finish. ``findings`` lists instances that
    contradict an asymptotic statement at desk scale; ``failures`` lists
    instances that contradict an exact finite statement.
    """

    experiment_id: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    seeds: List[int] = field(default_factory=list)
    instances: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    aggregates: Dict[str, int] = field(default_factory=dict)
    findings: List[str] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    wall_clock_ms: Optional[float] = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        document: Dict[str, Any] = {
            "version": REPORT_VERSION,
            "experiment_id": self.experiment_id,
            "parameters": self.parameters,
            "seeds": list(self.seeds),
            "instances": self.instances,
            "aggregates": self.aggregates,
            "findings": sorted(self.findings),
            "failures": sorted(self.failures),
        }
        if self.wall_clock_ms is not None:
            document["wall_clock_ms"] = round(self.wall_clock_ms, 3)
        return document

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, document: Dict[str, Any]) -> "ExperimentReport":
        if document.get("version") != REPORT_VERSION:
            raise InvalidInputError(
                f"unsupported report version {document.get('version')!r}",
                details={"expected": REPORT_VERSION},
            )
        try:
            return cls(
                experiment_id=document["experiment_id"],
                parameters=dict(document.get("parameters", {})),
                seeds=list(document.get("seeds", [])),
                instances=dict(document.get("instances", {})),
                aggregates=dict(document.get("aggregates", {})),
                findings=list(document.get("findings", [])),
                failures=list(document.get("failures", [])),
                wall_clock_ms=document.get("wall_clock_ms"),
            )
        except KeyError as e:
            raise InvalidInputError(f"report is missing field {e}") from e

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidInputError(
                f"report is not valid JSON: {e.msg}", details={"line": e.lineno, "column": e.colno}
            ) from e
        if not isinstance(document, dict):
            raise InvalidInputError("report must be a JSON object")
        return cls.from_dict(document)


def check_report_id(report_id: str) -> str:
    """Report ids double as file names"""
    if not _REPORT_ID.match(report_id):
        raise InvalidInputError(f"invalid report id {report_id!r}")
    return report_id


class ReportRepository(ABC):
    """
    Abstract interface for report persistence.

    Implementations:
    - JsonFileReportRepository: one JSON file per report in a directory
    - InMemoryReportRepository: process-local, for tests
    """

    @abstractmethod
    def save(self, report: ExperimentReport) -> str:
        """Store ``report`` under its experiment id, replacing any earlier one"""
        pass

    @abstractmethod
    def load(self, report_id: str) -> Optional[ExperimentReport]:
        pass

    @abstractmethod
    def list_reports(self) -> List[str]:
        """Stored report ids, sorted"""
        pass

    @abstractmethod
    def delete(self, report_id: str) -> bool:
        pass


__all__ = ["REPORT_VERSION", "ExperimentReport", "ReportRepository", "check_report_id"]
