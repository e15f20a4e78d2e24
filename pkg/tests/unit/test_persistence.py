"""
Unit tests for report persistence
"""

import json

import pytest

from rainbowham.core.exceptions import InvalidInputError
from rainbowham.persistence import (
    REPORT_VERSION,
    ExperimentReport,
    InMemoryReportRepository,
    JsonFileReportRepository,
    check_report_id,
)


def _report(report_id: str = "sweep-n4-6") -> ExperimentReport:
    return ExperimentReport(
        report_id,
        parameters={"n_max": 6},
        seeds=[3, 1],
        instances={"b": {"exists": True}, "a": {"exists": False}},
        findings=["b"],
    )


@pytest.mark.unit
class TestExperimentReport:
    """Report documents"""

    def test_document_is_sorted_and_versioned(self):
        text = _report().to_json()
        document = json.loads(text)
        assert document["version"] == REPORT_VERSION
        assert list(document["instances"]) == ["a", "b"]
        assert "wall_clock_ms" not in document
        assert text == json.dumps(document, sort_keys=True, indent=2) + "\n"

    def test_wall_clock_is_optional(self):
        report = _report()
        report.wall_clock_ms = 12.34567
        assert report.to_dict()["wall_clock_ms"] == 12.346

    def test_reload(self):
        report = ExperimentReport.from_json(_report().to_json())
        assert report.experiment_id == "sweep-n4-6"
        assert report.seeds == [3, 1]
        assert report.passed

    def test_failures_mean_not_passed(self):
        report = _report()
        report.failures.append("a")
        assert not report.passed

    def test_rejects_bad_documents(self):
        with pytest.raises(InvalidInputError):
            ExperimentReport.from_json("[1, 2]")
        with pytest.raises(InvalidInputError):
            ExperimentReport.from_json("{oops")
        with pytest.raises(InvalidInputError):
            ExperimentReport.from_dict({"version": 99, "experiment_id": "x"})
        with pytest.raises(InvalidInputError):
            ExperimentReport.from_dict({"version": REPORT_VERSION})

    def test_report_ids(self):
        assert check_report_id("dirac-sampling-n7-s0") == "dirac-sampling-n7-s0"
        for bad in ("", "../escape", "a/b", "-leading"):
            with pytest.raises(InvalidInputError):
                check_report_id(bad)


@pytest.mark.unit
class TestJsonFileRepository:
    """One file per report"""

    def test_save_load_list_delete(self, temp_dir):
        repo = JsonFileReportRepository(temp_dir / "reports")
        assert repo.list_reports() == []
        repo.save(_report("first"))
        repo.save(_report("second"))
        assert repo.list_reports() == ["first", "second"]
        assert (temp_dir / "reports" / "first.json").exists()
        loaded = repo.load("first")
        assert loaded.instances == _report().instances
        assert repo.delete("first")
        assert not repo.delete("first")
        assert repo.load("first") is None

    def test_save_replaces(self, temp_dir):
        repo = JsonFileReportRepository(temp_dir)
        repo.save(_report("same"))
        replacement = _report("same")
        replacement.findings = []
        repo.save(replacement)
        assert repo.load("same").findings == []

    def test_identical_reports_give_identical_bytes(self, temp_dir):
        first = JsonFileReportRepository(temp_dir / "one")
        second = JsonFileReportRepository(temp_dir / "two")
        first.save(_report())
        second.save(_report())
        assert (temp_dir / "one" / "sweep-n4-6.json").read_bytes() == (
            temp_dir / "two" / "sweep-n4-6.json"
        ).read_bytes()

    def test_rejects_path_ids(self, temp_dir):
        with pytest.raises(InvalidInputError):
            JsonFileReportRepository(temp_dir).load("../x")


@pytest.mark.unit
class TestInMemoryRepository:
    """Process-local storage"""

    def test_loaded_report_does_not_alias(self, report_repository):
        report = _report()
        report_repository.save(report)
        report.findings.append("late")
        assert report_repository.load(report.experiment_id).findings == ["b"]

    def test_list_and_delete(self, report_repository):
        report_repository.save(_report("x"))
        assert report_repository.list_reports() == ["x"]
        assert report_repository.delete("x")
        assert report_repository.load("x") is None

    def test_fresh_repository_is_empty(self):
        assert InMemoryReportRepository().list_reports() == []
