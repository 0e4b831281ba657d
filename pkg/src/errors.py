"""
Error types for dal-perf.

Every failure carries a machine-readable code, a human message and a details
dictionary, so the CLI can report it as JSON and map it to an exit code.
"""

from typing import Any


class DalError(Exception):
    """Base exception for dal-perf errors."""

    exit_code = 3

    def __init__(self, code: str, message: str, details: dict[str, Any] | None = None):
        self.code = code
        self.message = message
        self.details = details or {}
        super().__init__(message)

    def to_dict(self) -> dict[str, Any]:
        """Convert error to a JSON-serializable payload."""
        return {
            "error": {
                "code": self.code,
                "message": self.message,
                "details": self.details,
            }
        }


class DataError(DalError, ValueError):
    """Invalid input data or a violated operation precondition."""

    exit_code = 2


class UsageError(DalError):
    """Invalid command-line usage."""

    exit_code = 1
