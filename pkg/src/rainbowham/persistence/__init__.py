"""
Persistence Layer
=================

Report storage behind an abstract repository, so experiments do not care
whether reports land on disk or stay in memory.
"""

from .inmemory_impl import InMemoryReportRepository
from .json_impl import JsonFileReportRepository
from .repositories import REPORT_VERSION, ExperimentReport, ReportRepository, check_report_id

__all__ = [
    "REPORT_VERSION",
    "ExperimentReport",
    "ReportRepository",
    "check_report_id",
    "JsonFileReportRepository",
    "InMemoryReportRepository",
]
