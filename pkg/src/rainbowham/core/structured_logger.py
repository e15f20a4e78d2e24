"""
Structured Logging with Trace IDs
=================================

JSON-structured logging for long searches and experiment runs. A trace id
is bound per CLI invocation; an experiment additionally binds its run
label, so records emitted by the solver and the analysers during a sweep
name the report they belong to.
"""

import json
import logging
import uuid
from contextvars import ContextVar
from datetime import datetime
from typing import Any, Optional, Tuple

# (trace id, run label) of the current context
_binding_var: ContextVar[Optional[Tuple[str, Optional[str]]]] = ContextVar("trace_binding", default=None)


def _jsonable(value: Any) -> Any:
    if isinstance(value, (frozenset, set)):
        return sorted(value)
    if isinstance(value, tuple):
        return list(value)
    return str(value)


class StructuredLogger:
    """
    One JSON object per record, emitted through ``logging.getLogger("rainbowham.<component>")``

    Example output:
    {
        "timestamp": "2026-03-02T10:30:45.123456",
        "level": "INFO",
        "trace_id": "abc123ef",
        "run": "extremal-sweep-n4-9",
        "component": "harness.experiments",
        "message": "Experiment finished",
        "instances": 64
    }
    """

    def __init__(self, component: str, logger: Optional[logging.Logger] = None):
        self.component = component
        self.logger = logger or logging.getLogger(f"rainbowham.{component}")

    def _log(self, level: int, message: str, **fields: Any) -> None:
        # the search loops log at DEBUG; skip serialising filtered records
        if not self.logger.isEnabledFor(level):
            return

        record = {
            "timestamp": datetime.now().isoformat(),
            "level": logging.getLevelName(level),
            "component": self.component,
            "message": message,
        }
        binding = _binding_var.get()
        if binding is not None:
            record["trace_id"] = binding[0]
            if binding[1] is not None:
                record["run"] = binding[1]
        record.update(fields)
        self.logger.log(level, json.dumps(record, default=_jsonable))

    def debug(self, message: str, **fields: Any) -> None:
        self._log(logging.DEBUG, message, **fields)

    def info(self, message: str, **fields: Any) -> None:
        self._log(logging.INFO, message, **fields)

    def warning(self, message: str, **fields: Any) -> None:
        self._log(logging.WARNING, message, **fields)

    def error(self, message: str, **fields: Any) -> None:
        self._log(logging.ERROR, message, **fields)


class TraceContext:
    """
    Bind a trace id, and optionally a run label, for the enclosed block.

    A context opened inside another keeps the outer trace id unless one is
    given, so an experiment started from the CLI stays on the CLI trace.

    Usage:
        with TraceContext(run="dirac-sampling-n8-s0") as trace_id:
            logger.info("Sampling", trials=100)
    """

    def __init__(self, run: Optional[str] = None, trace_id: Optional[str] = None):
        outer = _binding_var.get()
        self.trace_id = trace_id or (outer[0] if outer else uuid.uuid4().hex[:8])
        self.run = run if run is not None else (outer[1] if outer else None)
        self.token = None

    def __enter__(self) -> str:
        self.token = _binding_var.set((self.trace_id, self.run))
        return self.trace_id

    def __exit__(self, exc_type, exc_val, exc_tb):
        _binding_var.reset(self.token)


# =============================================================================
# CONVENIENCE FUNCTIONS
# =============================================================================


def get_logger(component: str) -> StructuredLogger:
    """
    Get a structured logger for a component

    Args:
        component: Dotted component name, e.g. 'solver.hamilton'

    Returns:
        StructuredLogger instance
    """
    return StructuredLogger(component)


def get_trace_id() -> Optional[str]:
    binding = _binding_var.get()
    return binding[0] if binding else None


def get_run() -> Optional[str]:
    binding = _binding_var.get()
    return binding[1] if binding else None


__all__ = ["StructuredLogger", "TraceContext", "get_logger", "get_trace_id", "get_run"]
