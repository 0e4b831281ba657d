"""Pytest configuration and fixtures."""

import itertools
import shutil
import tempfile
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from src.dataset import Dataset, OptionKind, OptionSpec, load_csv
from src.dataset.schema import observed


def make_dataset(
    columns: dict[str, tuple[OptionKind, list]],
    performances: list[float] | np.ndarray,
    performance_name: str = "perf",
) -> Dataset:
    """Build a Dataset from named columns without going through CSV."""
    names = list(columns)
    schema = tuple(
        OptionSpec(name=name, kind=kind, observed_values=observed(values))
        for name, (kind, values) in columns.items()
    )
    rows = tuple(zip(*(columns[name][1] for name in names), strict=True))
    return Dataset(
        schema=schema,
        configurations=rows,
        performances=np.asarray(performances, dtype=float),
        performance_name=performance_name,
    )


@pytest.fixture
def temp_dir():
    """Create temporary directory."""
    path = Path(tempfile.mkdtemp())
    yield path
    shutil.rmtree(path)


@pytest.fixture
def mongodb_csv(temp_dir):
    """Every combination of four MongoDB-style options with a synthetic runtime."""
    rows = []
    for cache, interval, ssl, strategy in itertools.product(
        [1, 10, 10000], [1, 2, 3, 4], [0, 1], ["str_l1", "str_l2", "str_l3"]
    ):
        level = int(strategy[-1])
        runtime = 50 + cache // 10 + 3 * interval + 12 * ssl + 4 * level
        rows.append([cache, interval, ssl, strategy, runtime])

    path = temp_dir / "mongodb.csv"
    pd.DataFrame(rows, columns=["cache_size", "interval", "ssl", "data_strategy", "runtime"]).to_csv(
        path, index=False
    )
    return path


@pytest.fixture
def mongodb_dataset(mongodb_csv):
    """MongoDB-style dataset loaded from CSV."""
    return load_csv(mongodb_csv)


@pytest.fixture
def two_level_dataset():
    """
    18 rows whose tree splits into 10 and 8 rows at depth 1 and 5, 5 and 8 at depth 2.

    x <= 5 has mean 122, 6..10 has mean 200, 11..18 has mean 10.
    """
    x = [float(v) for v in range(1, 19)]
    perf = [122.0] * 5 + [200.0] * 5 + [10.0] * 8
    return make_dataset({"x": (OptionKind.NUMERIC, x)}, perf)


@pytest.fixture
def step_dataset():
    """perf = 100 when A = 0, else 1; B runs 1..10 in each half."""
    a = [0.0] * 10 + [1.0] * 10
    b = [float(v) for v in range(1, 11)] * 2
    perf = [100.0] * 10 + [1.0] * 10
    return make_dataset({"A": (OptionKind.BINARY, a), "B": (OptionKind.NUMERIC, b)}, perf)


@pytest.fixture
def bimodal_dataset():
    """
    100 rows whose runtime is near 1 or near 100 depending on option A.

    Within each mode runtime grows with B at a different rate; 5% multiplicative noise.
    """
    rng = np.random.default_rng(2024)
    a = rng.integers(0, 2, 100).astype(float)
    b = rng.integers(1, 11, 100).astype(float)
    base = np.where(a == 1.0, 100.0 + 10.0 * b, 1.0 + 0.1 * b)
    perf = base * (1.0 + 0.05 * rng.uniform(-1.0, 1.0, 100))
    return make_dataset(
        {"A": (OptionKind.BINARY, a.tolist()), "B": (OptionKind.NUMERIC, b.tolist())}, perf
    )
