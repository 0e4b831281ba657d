"""Tests for dataset loading, validation and resampling."""

import numpy as np
import pytest

from src.dataset import OptionKind, bootstrap_split, load_csv, read_configurations, resolve_train_size, save_csv
from src.errors import DataError
from tests.conftest import make_dataset


def test_load_small_file(temp_dir):
    """Test a three-row file with binary options."""
    path = temp_dir / "small.csv"
    path.write_text("a,b,perf\n0,1,3.5\n1,0,4.0\n1,1,2.25\n")

    dataset = load_csv(path)

    assert len(dataset) == 3
    assert dataset.option_names == ["a", "b"]
    assert [o.kind for o in dataset.schema] == [OptionKind.BINARY, OptionKind.BINARY]
    assert dataset.performance_name == "perf"
    assert dataset.performances.tolist() == [3.5, 4.0, 2.25]


def test_mongodb_kinds(mongodb_dataset):
    """Test kind inference on MongoDB-style options."""
    kinds = {o.name: o.kind for o in mongodb_dataset.schema}

    assert kinds == {
        "cache_size": OptionKind.NUMERIC,
        "interval": OptionKind.NUMERIC,
        "ssl": OptionKind.BINARY,
        "data_strategy": OptionKind.CATEGORICAL,
    }
    assert len(mongodb_dataset) == 72


def test_blank_performance_names_row(temp_dir):
    """Test that a blank performance cell is rejected with its row."""
    path = temp_dir / "blank.csv"
    path.write_text("a,perf\n0,1.0\n1,\n")

    with pytest.raises(DataError) as exc_info:
        load_csv(path)

    assert exc_info.value.code == "MISSING_CELL"
    assert exc_info.value.details["row"] == 2
    assert exc_info.value.details["column"] == "perf"


def test_non_numeric_performance(temp_dir):
    """Test that text in the performance column is rejected."""
    path = temp_dir / "text.csv"
    path.write_text("a,perf\n0,fast\n")

    with pytest.raises(DataError) as exc_info:
        load_csv(path)

    assert exc_info.value.code == "NON_NUMERIC_PERFORMANCE"


@pytest.mark.parametrize("value", ["inf", "-inf", "nan"])
def test_non_finite_performance(temp_dir, value):
    """Test that infinite or NaN performance is rejected with its row."""
    path = temp_dir / "inf.csv"
    path.write_text(f"a,perf\n0,1\n1,{value}\n")

    with pytest.raises(DataError) as exc_info:
        load_csv(path)

    assert exc_info.value.code == "NON_FINITE_PERFORMANCE"
    assert exc_info.value.details["row"] == 2


def test_row_with_extra_field(temp_dir):
    """Test that a row longer than the header is a data error naming its line."""
    path = temp_dir / "ragged.csv"
    path.write_text("a,b,perf\n0,1,5\n1,0,6,99\n0,0,4\n")

    with pytest.raises(DataError) as exc_info:
        load_csv(path)

    assert exc_info.value.code == "MALFORMED_ROW"
    assert exc_info.value.details["line"] == 3


def test_empty_file(temp_dir):
    """Test that an empty file is rejected."""
    path = temp_dir / "empty.csv"
    path.write_text("")

    with pytest.raises(DataError) as exc_info:
        load_csv(path)

    assert exc_info.value.code == "EMPTY_FILE"


def test_missing_file(temp_dir):
    """Test that a missing file is rejected."""
    with pytest.raises(DataError) as exc_info:
        load_csv(temp_dir / "nope.csv")

    assert exc_info.value.code == "FILE_NOT_FOUND"


def test_kinds_sidecar_forces_kind(temp_dir):
    """Test that the sidecar turns a 0/1 column into a categorical option."""
    path = temp_dir / "forced.csv"
    path.write_text("mode,perf\n0,1.0\n1,2.0\n")
    (temp_dir / "forced.csv.kinds.json").write_text('{"mode": "categorical"}')

    dataset = load_csv(path)

    assert dataset.schema[0].kind is OptionKind.CATEGORICAL
    assert dataset.configurations[0] == ("0",)


def test_save_then_load_is_identical(mongodb_dataset, temp_dir):
    """Test that load, save and load again keeps schema and rows."""
    path = temp_dir / "again.csv"
    save_csv(mongodb_dataset, path)

    reloaded = load_csv(path)

    assert reloaded.schema == mongodb_dataset.schema
    assert reloaded.configurations == mongodb_dataset.configurations
    assert np.array_equal(reloaded.performances, mongodb_dataset.performances)
    assert reloaded.fingerprint() == mongodb_dataset.fingerprint()


def test_read_configurations_drops_performance(temp_dir):
    """Test that a trailing performance column is accepted on prediction input."""
    path = temp_dir / "query.csv"
    path.write_text("a,s,perf\n1,x,9\n0,y,8\n")

    configs = read_configurations(path, [("a", OptionKind.BINARY), ("s", OptionKind.CATEGORICAL)], "perf")

    assert configs == [(1.0, "x"), (0.0, "y")]


def test_read_configurations_schema_mismatch(temp_dir):
    """Test that different columns are rejected."""
    path = temp_dir / "query.csv"
    path.write_text("b\n1\n")

    with pytest.raises(DataError) as exc_info:
        read_configurations(path, [("a", OptionKind.BINARY)])

    assert exc_info.value.code == "SCHEMA_MISMATCH"


def test_read_configurations_row_with_extra_field(temp_dir):
    """Test that a ragged prediction file is a data error."""
    path = temp_dir / "query.csv"
    path.write_text("a\n1\n0,7\n")

    with pytest.raises(DataError) as exc_info:
        read_configurations(path, [("a", OptionKind.BINARY)])

    assert exc_info.value.code == "MALFORMED_ROW"


def _ten_rows():
    return make_dataset({"x": (OptionKind.NUMERIC, [float(i) for i in range(10)])}, list(range(1, 11)))


def test_bootstrap_split_partitions():
    """Test that train and test are disjoint and cover the dataset."""
    train, test = bootstrap_split(_ten_rows(), 9, seed=7)

    assert len(train) == 9
    assert len(test) == 1
    xs = {c[0] for c in train.configurations} | {c[0] for c in test.configurations}
    assert xs == {float(i) for i in range(10)}
    assert not {c[0] for c in train.configurations} & {c[0] for c in test.configurations}


def test_bootstrap_split_is_deterministic():
    """Test that the same seed gives the same partition."""
    first = bootstrap_split(_ten_rows(), 5, seed=3)
    second = bootstrap_split(_ten_rows(), 5, seed=3)

    assert first[0].configurations == second[0].configurations
    assert first[1].configurations == second[1].configurations


def test_bootstrap_split_rejects_size():
    """Test train sizes outside [1, rows - 1]."""
    with pytest.raises(DataError) as exc_info:
        bootstrap_split(_ten_rows(), 10, seed=0)

    assert exc_info.value.code == "INVALID_TRAIN_SIZE"


def test_train_size_multiples():
    """Test '5n' on a 16-option system with 1152 rows."""
    columns = {f"o{i}": (OptionKind.BINARY, [float((r >> (i % 10)) & 1) for r in range(1152)]) for i in range(16)}
    dataset = make_dataset(columns, np.arange(1, 1153, dtype=float))

    train_size = resolve_train_size("5n", dataset)
    train, test = bootstrap_split(dataset, train_size, seed=1)

    assert train_size == 80
    assert (len(train), len(test)) == (80, 1072)
