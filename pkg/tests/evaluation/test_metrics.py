"""Tests for MRE and RMSE."""

import math

import pytest

from src.errors import DataError
from src.evaluation import mre, rmse


def test_mre():
    """Test a hand evaluated MRE."""
    result = mre([100.0, 200.0], [110.0, 180.0])

    assert result.value == pytest.approx(10.0)
    assert result.skipped == 0


def test_mre_perfect_predictor():
    """Test that exact predictions give 0."""
    assert mre([3.0, 7.5, 12.0], [3.0, 7.5, 12.0]).value == 0.0


@pytest.mark.parametrize("scale", [1e-3, 2.5, 1e6])
def test_mre_ignores_units(scale):
    """Test that rescaling actuals and predictions together leaves MRE unchanged."""
    actual = [12.0, 40.0, 7.5, 300.0]
    predicted = [10.0, 44.0, 7.0, 330.0]

    rescaled = mre([a * scale for a in actual], [p * scale for p in predicted])

    assert rescaled.value == pytest.approx(mre(actual, predicted).value, rel=1e-12)


def test_mre_skips_zero_actuals():
    """Test that zero actuals are skipped and counted."""
    result = mre([0.0, 10.0], [5.0, 10.0])

    assert result.value == 0.0
    assert result.skipped == 1


def test_mre_all_zero_actuals_undefined():
    """Test that MRE is undefined when every actual is zero."""
    result = mre([0.0, 0.0], [1.0, 2.0])

    assert result.value is None
    assert result.skipped == 2


def test_rmse():
    """Test identical, two-point and one-point cases."""
    assert rmse([1.0, 2.0], [1.0, 2.0]) == 0.0
    assert rmse([0.0, 0.0], [3.0, 4.0]) == pytest.approx(math.sqrt(12.5))
    assert rmse([5.0], [7.0]) == pytest.approx(2.0)


def test_length_mismatch():
    """Test that unequal lengths are rejected."""
    with pytest.raises(DataError) as exc_info:
        mre([1.0, 2.0], [1.0])

    assert exc_info.value.code == "LENGTH_MISMATCH"


def test_empty_input():
    """Test that empty sequences are rejected."""
    with pytest.raises(DataError) as exc_info:
        rmse([], [])

    assert exc_info.value.code == "EMPTY_INPUT"
