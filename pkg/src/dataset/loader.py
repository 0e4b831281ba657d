"""
Dataset Loader for configuration-performance CSV files.

Reads a CSV (header row, options first, performance last), validates it,
infers each option's kind and builds an immutable Dataset.
"""

import logging
import re
from pathlib import Path
from typing import Any

import orjson
import pandas as pd

from ..errors import DataError
from .schema import Configuration, Dataset, OptionKind, OptionSpec, OptionValue, observed
from .validator import DatasetValidator

logger = logging.getLogger(__name__)

KINDS_SUFFIX = ".kinds.json"
FILE_LINE = re.compile(r"line (\d+)")


def malformed_row(path: Path, error: pd.errors.ParserError) -> DataError:
    """Data error for a CSV row pandas could not tokenize, naming its file line."""
    match = FILE_LINE.search(str(error))
    line = int(match.group(1)) if match else None
    where = f" at line {line}" if line is not None else ""
    return DataError(
        "MALFORMED_ROW",
        f"Malformed row in {path}{where}: {error}",
        {"path": str(path), "line": line},
    )


class DatasetLoader:
    """Loads and validates configuration-performance datasets."""

    def __init__(self, path: Path, kinds_path: Path | None = None):
        """
        Initialize dataset loader.

        Args:
            path: Path to the CSV file
            kinds_path: Optional JSON sidecar mapping option name to kind.
                Defaults to '<path>.kinds.json' when that file exists.
        """
        self.path = path
        sidecar = path.with_name(path.name + KINDS_SUFFIX)
        self.kinds_path = kinds_path or (sidecar if sidecar.exists() else None)

    def load(self) -> Dataset:
        """
        Load the dataset.

        Returns:
            Validated Dataset

        Raises:
            DataError: If the file is missing, empty or violates the contract
        """
        logger.info(f"Loading dataset: {self.path}")

        header, body = self._read_table()

        validator = DatasetValidator()
        results = validator.validate(header, body)
        if not results["valid"]:
            issue = validator.first_error()
            assert issue is not None
            raise DataError(
                issue.code,
                issue.message,
                {"path": str(self.path), "row": issue.row, "column": issue.column,
                 "issues": results["issues"]},
            )

        forced = self._read_kinds(header[:-1])
        schema, columns = self._build_schema(header[:-1], body, forced)
        configurations: list[Configuration] = list(zip(*columns, strict=True))
        performances = pd.to_numeric(body.iloc[:, -1]).to_numpy(dtype=float)

        dataset = Dataset(
            schema=tuple(schema),
            configurations=tuple(configurations),
            performances=performances,
            performance_name=header[-1],
        )

        kinds = ", ".join(f"{o.name}:{o.kind.value}" for o in dataset.schema)
        logger.info(f"Dataset loaded: {len(dataset)} rows, options [{kinds}]")
        return dataset

    def _read_table(self) -> tuple[list[str], pd.DataFrame]:
        """Read the raw cells as strings."""
        if not self.path.exists():
            raise DataError("FILE_NOT_FOUND", f"Dataset not found: {self.path}",
                            {"path": str(self.path)})

        try:
            raw = pd.read_csv(
                self.path,
                header=None,
                dtype=str,
                keep_default_na=False,
                encoding="utf-8",
                skipinitialspace=True,
            )
        except pd.errors.EmptyDataError as e:
            raise DataError("EMPTY_FILE", f"Dataset file is empty: {self.path}",
                            {"path": str(self.path)}) from e
        except pd.errors.ParserError as e:
            raise malformed_row(self.path, e) from e

        raw = raw.fillna("")
        header = [str(name).strip() for name in raw.iloc[0].tolist()]
        body = raw.iloc[1:].reset_index(drop=True)
        return header, body

    def _read_kinds(self, option_names: list[str]) -> dict[str, OptionKind]:
        """Read the optional kinds sidecar."""
        if self.kinds_path is None:
            return {}

        try:
            data: Any = orjson.loads(self.kinds_path.read_bytes())
        except (OSError, orjson.JSONDecodeError) as e:
            raise DataError("INVALID_KIND", f"Cannot read kinds sidecar: {e}",
                            {"path": str(self.kinds_path)}) from e

        forced: dict[str, OptionKind] = {}
        for name, kind in dict(data).items():
            if name not in option_names:
                raise DataError("INVALID_KIND", f"Sidecar names unknown option '{name}'",
                                {"option": name})
            try:
                forced[name] = OptionKind(kind)
            except ValueError as e:
                raise DataError("INVALID_KIND", f"Unknown kind '{kind}' for '{name}'",
                                {"option": name, "kind": kind}) from e

        logger.debug(f"Forced option kinds: {forced}")
        return forced

    def _build_schema(
        self,
        option_names: list[str],
        body: pd.DataFrame,
        forced: dict[str, OptionKind],
    ) -> tuple[list[OptionSpec], list[list[OptionValue]]]:
        """Infer kinds and convert cells."""
        schema: list[OptionSpec] = []
        columns: list[list[OptionValue]] = []

        for position, name in enumerate(option_names):
            cells = body.iloc[:, position].str.strip()
            kind = forced.get(name) or infer_kind(cells)
            values = convert_cells(name, cells, kind)
            schema.append(OptionSpec(name=name, kind=kind, observed_values=observed(values)))
            columns.append(values)

        return schema, columns


def infer_kind(cells: pd.Series) -> OptionKind:
    """Infer option kind in the order binary, numeric, categorical."""
    parsed = pd.to_numeric(cells, errors="coerce")
    if parsed.isna().any():
        return OptionKind.CATEGORICAL
    if set(parsed.unique()) <= {0.0, 1.0}:
        return OptionKind.BINARY
    return OptionKind.NUMERIC


def convert_cells(name: str, cells: pd.Series, kind: OptionKind) -> list[OptionValue]:
    """Convert string cells to option values for a kind."""
    if kind is OptionKind.CATEGORICAL:
        return [str(v) for v in cells]

    parsed = pd.to_numeric(cells, errors="coerce")
    if parsed.isna().any():
        row = int(parsed.isna().to_numpy().nonzero()[0][0]) + 1
        raise DataError(
            "INVALID_KIND",
            f"Option '{name}' is declared {kind.value} but row {row} is not numeric",
            {"option": name, "row": row},
        )
    return [float(v) for v in parsed]


def load_csv(path: str | Path, kinds_path: str | Path | None = None) -> Dataset:
    """
    Load a configuration-performance dataset from CSV.

    Args:
        path: CSV file; header row, options first, performance last
        kinds_path: Optional JSON sidecar forcing option kinds

    Returns:
        Dataset
    """
    return DatasetLoader(Path(path), Path(kinds_path) if kinds_path else None).load()


def read_configurations(
    path: str | Path,
    options: list[tuple[str, OptionKind]],
    performance_name: str | None = None,
) -> list[Configuration]:
    """
    Read a CSV of configurations to predict.

    The header must list the options in training order. A trailing
    performance column is accepted and ignored.

    Args:
        path: CSV file
        options: (name, kind) per training option
        performance_name: Name of an optional trailing performance column

    Returns:
        Configurations aligned to the options

    Raises:
        DataError: On a missing file, a header mismatch or a blank cell
    """
    path = Path(path)
    if not path.exists():
        raise DataError("FILE_NOT_FOUND", f"Configurations file not found: {path}", {"path": str(path)})

    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError as e:
        raise DataError("EMPTY_FILE", f"Configurations file is empty: {path}", {"path": str(path)}) from e
    except pd.errors.ParserError as e:
        raise malformed_row(path, e) from e

    names = [name for name, _ in options]
    header = [str(c).strip() for c in frame.columns]
    if performance_name is not None and header == [*names, performance_name]:
        frame = frame.iloc[:, :-1]
        header = header[:-1]
    if header != names:
        raise DataError(
            "SCHEMA_MISMATCH",
            f"Columns {header} do not match model options {names}",
            {"expected": names, "got": header},
        )

    frame = frame.fillna("")
    columns: list[list[OptionValue]] = []
    for position, (name, kind) in enumerate(options):
        cells = frame.iloc[:, position].str.strip()
        blank = (cells == "").to_numpy().nonzero()[0]
        if blank.size:
            row = int(blank[0]) + 1
            raise DataError("MISSING_CELL", f"Row {row}, column '{name}' is blank",
                            {"row": row, "column": name})
        columns.append(convert_cells(name, cells, kind))

    configurations: list[Configuration] = list(zip(*columns, strict=True))
    logger.info(f"Read {len(configurations)} configurations from {path}")
    return configurations


def _format_value(value: OptionValue) -> str:
    if isinstance(value, str):
        return value
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def save_csv(dataset: Dataset, path: str | Path) -> None:
    """
    Write a dataset in the CSV contract read by load_csv.

    Args:
        dataset: Dataset to write
        path: Destination file
    """
    frame = pd.DataFrame(
        [[_format_value(v) for v in config] for config in dataset.configurations],
        columns=dataset.option_names,
    )
    frame[dataset.performance_name] = [_format_value(float(p)) for p in dataset.performances]
    frame.to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
    logger.info(f"Dataset written: {path} ({len(dataset)} rows)")
