"""
Unit tests for structured logging
"""

import json
import logging

import pytest

from rainbowham.core.structured_logger import TraceContext, get_logger, get_run, get_trace_id


def _records(caplog):
    return [json.loads(r.getMessage()) for r in caplog.records if r.name.startswith("rainbowham.")]


@pytest.mark.unit
class TestStructuredLogger:
    """JSON records and trace binding"""

    def test_record_fields(self, caplog):
        caplog.set_level(logging.INFO, logger="rainbowham")
        get_logger("solver.hamilton").info("Search finished", nodes=12, colors=frozenset({2, 0}))
        (record,) = _records(caplog)
        assert record["component"] == "solver.hamilton"
        assert record["level"] == "INFO"
        assert record["nodes"] == 12
        assert record["colors"] == [0, 2]
        assert "trace_id" not in record

    def test_filtered_levels_emit_nothing(self, caplog):
        caplog.set_level(logging.WARNING, logger="rainbowham")
        get_logger("solver.hamilton").debug("Node", depth=3)
        assert _records(caplog) == []

    def test_run_label_is_attached(self, caplog):
        caplog.set_level(logging.INFO, logger="rainbowham")
        with TraceContext(run="extremal-sweep-n4-5") as trace_id:
            get_logger("harness").info("Started")
        (record,) = _records(caplog)
        assert record["trace_id"] == trace_id
        assert record["run"] == "extremal-sweep-n4-5"

    def test_nested_context_keeps_outer_trace(self):
        with TraceContext(trace_id="cli00001"):
            with TraceContext(run="dirac-sampling-n8-s0") as inner:
                assert inner == "cli00001"
                assert get_run() == "dirac-sampling-n8-s0"
            assert get_run() is None
        assert get_trace_id() is None
