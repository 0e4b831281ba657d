"""
Dataset Validator.

Checks a raw CSV table against the dataset contract: header present,
performance in the last column, no missing cells, finite numeric performance.
"""

import logging
from typing import Any

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)


class ValidationIssue:
    """Represents a problem found in a raw dataset table."""

    def __init__(
        self,
        code: str,
        message: str,
        row: int | None = None,
        column: str | None = None,
    ):
        self.code = code
        self.message = message
        self.row = row
        self.column = column

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "code": self.code,
            "message": self.message,
            "row": self.row,
            "column": self.column,
        }


class DatasetValidator:
    """Validates raw configuration-performance tables."""

    def __init__(self) -> None:
        """Initialize dataset validator."""
        self.issues: list[ValidationIssue] = []

    def validate(self, header: list[str], body: pd.DataFrame) -> dict[str, Any]:
        """
        Validate a raw table.

        Args:
            header: Column names, performance last
            body: Data cells as strings, one row per measured configuration

        Returns:
            Validation results
        """
        self.issues = []

        self._validate_header(header)
        if body.empty:
            self._error("EMPTY_DATASET", "Dataset has a header but no rows")
        else:
            self._validate_cells(header, body)
            self._validate_performance(header, body)

        results = {
            "valid": not self.issues,
            "issues": [i.to_dict() for i in self.issues],
            "summary": {"errors": len(self.issues)},
        }

        logger.debug(f"Dataset validation: {len(self.issues)} errors")
        return results

    def first_error(self) -> ValidationIssue | None:
        """Return the first issue, if any."""
        return self.issues[0] if self.issues else None

    def _error(
        self, code: str, message: str, row: int | None = None, column: str | None = None
    ) -> None:
        self.issues.append(ValidationIssue(code, message, row, column))

    def _validate_header(self, header: list[str]) -> None:
        """Check column count and name uniqueness."""
        if len(header) < 2:
            self._error(
                "TOO_FEW_COLUMNS",
                "Need at least one option column and one performance column",
            )

        seen: set[str] = set()
        for name in header:
            if not name:
                self._error("MISSING_CELL", "Header has an empty column name", row=0)
            elif name in seen:
                self._error("DUPLICATE_OPTION", f"Duplicate column '{name}'", column=name)
            seen.add(name)

    def _validate_cells(self, header: list[str], body: pd.DataFrame) -> None:
        """Flag blank cells with their row and column."""
        blank = body.apply(lambda col: col.str.strip() == "")
        for row_pos, col_pos in zip(*blank.to_numpy().nonzero(), strict=True):
            column = header[col_pos]
            row = int(row_pos) + 1
            if col_pos == len(header) - 1:
                message = f"Row {row} has a blank performance cell"
            else:
                message = f"Row {row} has a missing value in column '{column}'"
            self._error("MISSING_CELL", message, row=row, column=column)

    def _validate_performance(self, header: list[str], body: pd.DataFrame) -> None:
        """Performance must parse as a finite number."""
        perf = body.iloc[:, -1]
        text = perf.str.strip()
        parsed = pd.to_numeric(perf, errors="coerce")
        not_a_number = text.str.lower().str.lstrip("+-") == "nan"
        non_finite = np.isinf(parsed.to_numpy(dtype=float)) | not_a_number.to_numpy()
        non_numeric = (parsed.isna() & (text != "")).to_numpy() & ~non_finite

        for row_pos in np.flatnonzero(non_numeric | non_finite):
            row = int(row_pos) + 1
            kind = "non-finite" if non_finite[row_pos] else "non-numeric"
            self._error(
                "NON_FINITE_PERFORMANCE" if non_finite[row_pos] else "NON_NUMERIC_PERFORMANCE",
                f"Row {row} has {kind} performance '{perf.iloc[row_pos]}'",
                row=row,
                column=header[-1],
            )
