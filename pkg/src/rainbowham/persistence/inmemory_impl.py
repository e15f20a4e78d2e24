"""
In-Memory Report Repository
===========================

Keeps serialized reports in a dict, so a loaded report never aliases the
saved object. Not persistent; meant for tests and single runs.
"""

from typing import Dict, List, Optional

from .repositories import ExperimentReport, ReportRepository, check_report_id


class InMemoryReportRepository(ReportRepository):
    def __init__(self) -> None:
        self._reports: Dict[str, str] = {}

    def save(self, report: ExperimentReport) -> str:
        self._reports[check_report_id(report.experiment_id)] = report.to_json()
        return report.experiment_id

    def load(self, report_id: str) -> Optional[ExperimentReport]:
        text = self._reports.get(report_id)
        return ExperimentReport.from_json(text) if text is not None else None

    def list_reports(self) -> List[str]:
        return sorted(self._reports)

    def delete(self, report_id: str) -> bool:
        return self._reports.pop(report_id, None) is not None


__all__ = ["InMemoryReportRepository"]
