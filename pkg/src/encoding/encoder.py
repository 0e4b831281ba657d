"""
Configuration Encoder.

Maps configurations to feature vectors under label, scaled-label and one-hot
encoding. State is fitted on training rows only and then frozen.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from ..dataset.schema import Configuration, Dataset, OptionKind, OptionValue
from ..errors import DataError

logger = logging.getLogger(__name__)


class Scheme(str, Enum):
    """Encoding scheme."""

    LABEL = "label"
    SCALED_LABEL = "scaled_label"
    ONE_HOT = "one_hot"


# Command-line spellings
SCHEME_ALIASES = {
    "label": Scheme.LABEL,
    "scaled": Scheme.SCALED_LABEL,
    "scaled_label": Scheme.SCALED_LABEL,
    "onehot": Scheme.ONE_HOT,
    "one_hot": Scheme.ONE_HOT,
}


@dataclass(frozen=True)
class OptionEncoding:
    """Fitted state for one option."""

    name: str
    kind: OptionKind
    categories: tuple[OptionValue, ...]
    v_min: float
    v_max: float

    @property
    def width(self) -> int:
        return len(self.categories)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind.value,
            "categories": list(self.categories),
            "v_min": self.v_min,
            "v_max": self.v_max,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "OptionEncoding":
        kind = OptionKind(data["kind"])
        categories = tuple(
            str(c) if kind is OptionKind.CATEGORICAL else float(c) for c in data["categories"]
        )
        return cls(data["name"], kind, categories, float(data["v_min"]), float(data["v_max"]))


@dataclass(frozen=True)
class Encoder:
    """Fitted configuration encoder."""

    scheme: Scheme
    options: tuple[OptionEncoding, ...]

    @property
    def output_width(self) -> int:
        if self.scheme is Scheme.ONE_HOT:
            return sum(option.width for option in self.options)
        return len(self.options)

    def encode(self, config: Configuration, issues: list[str] | None = None) -> np.ndarray:
        """
        Encode one configuration.

        Args:
            config: Option values aligned to the training schema
            issues: Optional list that receives a message per unseen value

        Returns:
            Feature vector of length output_width

        Raises:
            DataError: If the configuration length does not match the schema
        """
        if len(config) != len(self.options):
            raise DataError(
                "SCHEMA_MISMATCH",
                f"Configuration has {len(config)} values, schema has {len(self.options)}",
                {"expected": len(self.options), "got": len(config)},
            )

        if self.scheme is Scheme.ONE_HOT:
            return self._encode_one_hot(config, issues)

        codes = np.array(
            [self._label(option, value, issues) for option, value in zip(self.options, config, strict=True)],
            dtype=float,
        )
        if self.scheme is Scheme.LABEL:
            return codes

        scaled = np.zeros_like(codes)
        for i, option in enumerate(self.options):
            span = option.v_max - option.v_min
            if span > 0:
                scaled[i] = (codes[i] - option.v_min) / span
        return scaled

    def encode_many(
        self, configs: Sequence[Configuration], issues: list[str] | None = None
    ) -> np.ndarray:
        """Encode configurations into a (rows, output_width) matrix."""
        matrix = np.zeros((len(configs), self.output_width), dtype=float)
        for row, config in enumerate(configs):
            matrix[row] = self.encode(config, issues)
        return matrix

    def _label(self, option: OptionEncoding, value: OptionValue, issues: list[str] | None) -> float:
        """Integer code for categoricals, raw value otherwise."""
        if option.kind is not OptionKind.CATEGORICAL:
            return float(value)
        try:
            return float(option.categories.index(str(value)))
        except ValueError:
            self._unseen(option, value, issues)
            return float(len(option.categories))

    def _encode_one_hot(self, config: Configuration, issues: list[str] | None) -> np.ndarray:
        vector = np.zeros(self.output_width, dtype=float)
        offset = 0
        for option, value in zip(self.options, config, strict=True):
            key: OptionValue = str(value) if option.kind is OptionKind.CATEGORICAL else float(value)
            try:
                vector[offset + option.categories.index(key)] = 1.0
            except ValueError:
                self._unseen(option, value, issues)
            offset += option.width
        return vector

    @staticmethod
    def _unseen(option: OptionEncoding, value: OptionValue, issues: list[str] | None) -> None:
        message = f"Value {value!r} of option '{option.name}' was not seen in training"
        logger.warning(message)
        if issues is not None:
            issues.append(message)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "scheme": self.scheme.value,
            "output_width": self.output_width,
            "options": [option.to_dict() for option in self.options],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Encoder":
        """Rebuild from to_dict output."""
        return cls(
            scheme=Scheme(data["scheme"]),
            options=tuple(OptionEncoding.from_dict(o) for o in data["options"]),
        )


def fit_encoder(train: Dataset, scheme: Scheme | str) -> Encoder:
    """
    Fit an encoder on training rows.

    Args:
        train: Training dataset
        scheme: Encoding scheme (enum value or CLI alias)

    Returns:
        Fitted Encoder
    """
    resolved = scheme if isinstance(scheme, Scheme) else SCHEME_ALIASES[scheme]

    options: list[OptionEncoding] = []
    for position, spec in enumerate(train.schema):
        column = [config[position] for config in train.configurations]
        if spec.kind is OptionKind.CATEGORICAL:
            categories: tuple[OptionValue, ...] = tuple(sorted({str(v) for v in column}))
            codes = [float(categories.index(str(v))) for v in column]
        else:
            categories = tuple(sorted({float(v) for v in column}))
            codes = [float(v) for v in column]
        options.append(
            OptionEncoding(
                name=spec.name,
                kind=spec.kind,
                categories=categories,
                v_min=min(codes),
                v_max=max(codes),
            )
        )

    encoder = Encoder(scheme=resolved, options=tuple(options))
    logger.debug(f"Encoder fitted: scheme={resolved.value}, width={encoder.output_width}")
    return encoder


def encode(e: Encoder, config: Configuration) -> np.ndarray:
    """Encode one configuration with a fitted encoder."""
    return e.encode(config)
