"""
Accuracy metrics.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..errors import DataError


@dataclass(frozen=True)
class MreResult:
    """Mean relative error in percent; value is None when every actual is zero."""

    value: float | None
    skipped: int


def _pair(actual: Sequence[float] | np.ndarray, predicted: Sequence[float] | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(actual, dtype=float)
    p = np.asarray(predicted, dtype=float)
    if a.shape != p.shape:
        raise DataError(
            "LENGTH_MISMATCH",
            f"{a.size} actual values but {p.size} predictions",
            {"actual": int(a.size), "predicted": int(p.size)},
        )
    if a.size == 0:
        raise DataError("EMPTY_INPUT", "Metrics need at least one value")
    return a, p


def mre(actual: Sequence[float] | np.ndarray, predicted: Sequence[float] | np.ndarray) -> MreResult:
    """
    Mean relative error, in percent.

    Points whose actual value is zero are skipped and counted.

    Args:
        actual: Measured performances
        predicted: Predicted performances

    Returns:
        MreResult
    """
    a, p = _pair(actual, predicted)
    kept = a != 0
    skipped = int((~kept).sum())
    if not kept.any():
        return MreResult(value=None, skipped=skipped)
    relative = np.abs(a[kept] - p[kept]) / np.abs(a[kept])
    return MreResult(value=float(np.mean(relative) * 100.0), skipped=skipped)


def rmse(actual: Sequence[float] | np.ndarray, predicted: Sequence[float] | np.ndarray) -> float:
    """Root mean squared error."""
    a, p = _pair(actual, predicted)
    return float(np.sqrt(np.mean((a - p) ** 2)))
