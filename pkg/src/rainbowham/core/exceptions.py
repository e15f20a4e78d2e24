"""
Custom Exceptions for rainbowham
================================

Structured error handling lets the CLI and the harness react to errors by
type rather than by parsing strings.

Error Codes:
- 1xxx: Input errors (collection files, parameters, preconditions, size caps)
- 3xxx: Resource errors (search budgets)
- 4xxx: Execution errors (constructions that could not be completed)
- 5xxx: System errors (internal, configuration)
"""

from enum import IntEnum
from typing import Any, Dict, Optional


class ErrorCode(IntEnum):
    """Structured error codes"""

    # 1xxx: Input Errors
    INVALID_COLLECTION = 1001
    INVALID_PARAMETERS = 1002
    PRECONDITION_FAILED = 1003
    SIZE_CAP_EXCEEDED = 1004
    INVALID_CERTIFICATE_FILE = 1005

    # 3xxx: Resource Errors
    BUDGET_EXCEEDED = 3001

    # 4xxx: Execution Errors
    CONSTRUCTION_FAILED = 4001

    # 5xxx: System Errors
    INTERNAL_ERROR = 5001
    CONFIGURATION_ERROR = 5003


class RainbowHamError(Exception):
    """Base exception for all rainbowham errors"""

    def __init__(
        self,
        message: str,
        error_code: ErrorCode = ErrorCode.INTERNAL_ERROR,
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary for structured logging"""
        return {
            "error_type": self.__class__.__name__,
            "error_code": int(self.error_code),
            "message": self.message,
            "details": self.details,
        }

    def user_message(self) -> str:
        """Short message for the command line, keyed by error code"""
        code_messages = {
            ErrorCode.INVALID_COLLECTION: "Malformed collection file",
            ErrorCode.INVALID_PARAMETERS: "Invalid parameters",
            ErrorCode.PRECONDITION_FAILED: "Precondition not satisfied",
            ErrorCode.SIZE_CAP_EXCEEDED: "Instance too large for exhaustive mode",
            ErrorCode.INVALID_CERTIFICATE_FILE: "Malformed certificate file",
            ErrorCode.BUDGET_EXCEEDED: "Search budget exceeded",
            ErrorCode.CONSTRUCTION_FAILED: "Construction failed",
            ErrorCode.INTERNAL_ERROR: "Internal error",
            ErrorCode.CONFIGURATION_ERROR: "Configuration error",
        }
        prefix = code_messages.get(self.error_code, "Error")
        return f"Error {int(self.error_code)}: {prefix}: {self.message}"


class CollectionFormatError(RainbowHamError):
    """Raised when a collection or witness document cannot be parsed.

    ``location`` is a human readable pointer into the document, either
    ``line L, column C`` for JSON syntax errors or a field path such as
    ``graphs[2][5]``.
    """

    def __init__(
        self,
        message: str,
        location: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        details = dict(details or {})
        if location is not None:
            details["location"] = location
        text = f"{location}: {message}" if location else message
        super().__init__(text, ErrorCode.INVALID_COLLECTION, details)
        self.location = location
        self.reason = message


class CertificateFormatError(RainbowHamError):
    """Raised when a certificate document cannot be parsed"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, ErrorCode.INVALID_CERTIFICATE_FILE, details)


class InvalidInputError(RainbowHamError):
    """Raised when arguments are outside their documented range"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, ErrorCode.INVALID_PARAMETERS, details)


class PreconditionError(RainbowHamError):
    """Raised when an operation's precondition does not hold for the given input"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, ErrorCode.PRECONDITION_FAILED, details)


class SizeCapExceededError(RainbowHamError):
    """Raised when an exhaustive mode is requested above its vertex cap"""

    def __init__(self, n: int, cap: int, operation: str):
        super().__init__(
            f"{operation}: exhaustive mode supports n <= {cap}, got n = {n}",
            ErrorCode.SIZE_CAP_EXCEEDED,
            {"n": n, "cap": cap, "operation": operation},
        )
        self.n = n
        self.cap = cap


class ConstructionError(RainbowHamError):
    """Raised when a randomized construction cannot complete"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, ErrorCode.CONSTRUCTION_FAILED, details)


class ConfigurationError(RainbowHamError):
    """Raised when settings cannot be loaded"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, ErrorCode.CONFIGURATION_ERROR, details)


__all__ = [
    "ErrorCode",
    "RainbowHamError",
    "CollectionFormatError",
    "CertificateFormatError",
    "InvalidInputError",
    "PreconditionError",
    "SizeCapExceededError",
    "ConstructionError",
    "ConfigurationError",
]
