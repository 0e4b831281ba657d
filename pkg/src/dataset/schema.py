"""
Dataset schema types.

Represents configuration options and measured configuration-performance samples.
"""

import hashlib
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from ..errors import DataError

OptionValue = float | str
Configuration = tuple[OptionValue, ...]


class OptionKind(str, Enum):
    """Kind of a configuration option."""

    BINARY = "binary"
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"


@dataclass(frozen=True)
class OptionSpec:
    """A configuration option and the values seen for it."""

    name: str
    kind: OptionKind
    observed_values: tuple[OptionValue, ...]

    def __post_init__(self) -> None:
        if self.kind is OptionKind.BINARY and not set(self.observed_values) <= {0.0, 1.0}:
            raise DataError(
                "INVALID_KIND",
                f"Binary option '{self.name}' has non-binary values",
                {"option": self.name, "values": list(self.observed_values)},
            )
        if self.kind is OptionKind.CATEGORICAL and not self.observed_values:
            raise DataError(
                "INVALID_KIND",
                f"Categorical option '{self.name}' has no values",
                {"option": self.name},
            )

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "name": self.name,
            "kind": self.kind.value,
            "observed_values": list(self.observed_values),
        }


def observed(values: Sequence[OptionValue]) -> tuple[OptionValue, ...]:
    """Sorted distinct values."""
    return tuple(sorted(set(values)))  # type: ignore[type-var]


@dataclass(frozen=True)
class Dataset:
    """Measured configurations paired with a performance value."""

    schema: tuple[OptionSpec, ...]
    configurations: tuple[Configuration, ...]
    performances: np.ndarray = field(repr=False)
    performance_name: str = "performance"

    def __post_init__(self) -> None:
        names = [option.name for option in self.schema]
        if len(set(names)) != len(names):
            raise DataError("DUPLICATE_OPTION", "Option names must be unique", {"options": names})
        if not self.configurations:
            raise DataError("EMPTY_DATASET", "Dataset has no rows")
        if len(self.configurations) != len(self.performances):
            raise DataError(
                "LENGTH_MISMATCH",
                "Configuration and performance counts differ",
                {
                    "configurations": len(self.configurations),
                    "performances": len(self.performances),
                },
            )
        for row, config in enumerate(self.configurations, start=1):
            if len(config) != len(self.schema):
                raise DataError(
                    "SCHEMA_MISMATCH",
                    f"Row {row} has {len(config)} values, schema has {len(self.schema)}",
                    {"row": row},
                )
        perfs = np.array(self.performances, dtype=float)
        perfs.setflags(write=False)
        object.__setattr__(self, "performances", perfs)

    def __len__(self) -> int:
        return len(self.configurations)

    @property
    def option_names(self) -> list[str]:
        return [option.name for option in self.schema]

    def subset(self, indices: Sequence[int] | np.ndarray) -> "Dataset":
        """
        Select rows by index, keeping the schema.

        Args:
            indices: Row indices in the order they should appear

        Returns:
            New dataset with the selected rows
        """
        idx = [int(i) for i in indices]
        return Dataset(
            schema=self.schema,
            configurations=tuple(self.configurations[i] for i in idx),
            performances=self.performances[idx],
            performance_name=self.performance_name,
        )

    def fingerprint(self) -> str:
        """SHA-256 over the canonical schema and rows."""
        digest = hashlib.sha256()
        digest.update(repr([(o.name, o.kind.value) for o in self.schema]).encode("utf-8"))
        for config, perf in zip(self.configurations, self.performances, strict=True):
            digest.update(repr((config, float(perf))).encode("utf-8"))
        return digest.hexdigest()

    def to_dict(self) -> dict[str, Any]:
        """Summary dictionary (schema and size, not the rows)."""
        return {
            "schema": [option.to_dict() for option in self.schema],
            "rows": len(self),
            "performance_name": self.performance_name,
            "fingerprint": self.fingerprint(),
        }
