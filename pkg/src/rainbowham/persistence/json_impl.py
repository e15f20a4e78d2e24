"""
JSON File Report Repository
===========================

One UTF-8 file ``<report id>.json`` per report under a directory that is
created on first use.
"""

from pathlib import Path
from typing import List, Optional, Union

from ..core.structured_logger import get_logger
from .repositories import ExperimentReport, ReportRepository, check_report_id

logger = get_logger("persistence.json")


class JsonFileReportRepository(ReportRepository):
    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)

    def _path(self, report_id: str) -> Path:
        return self.directory / f"{check_report_id(report_id)}.json"

    def save(self, report: ExperimentReport) -> str:
        path = self._path(report.experiment_id)
        self.directory.mkdir(parents=True, exist_ok=True)
        path.write_text(report.to_json(), encoding="utf-8")
        logger.info("Report saved", report_id=report.experiment_id, path=str(path))
        return report.experiment_id

    def load(self, report_id: str) -> Optional[ExperimentReport]:
        path = self._path(report_id)
        if not path.exists():
            return None
        return ExperimentReport.from_json(path.read_text(encoding="utf-8"))

    def list_reports(self) -> List[str]:
        if not self.directory.exists():
            return []
        return sorted(p.stem for p in self.directory.glob("*.json"))

    def delete(self, report_id: str) -> bool:
        path = self._path(report_id)
        if not path.exists():
            return False
        path.unlink()
        return True


__all__ = ["JsonFileReportRepository"]
