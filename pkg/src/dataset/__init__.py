"""Configuration-performance datasets: schema, loading and resampling."""

from .loader import DatasetLoader, load_csv, read_configurations, save_csv
from .resampling import bootstrap_split, resolve_train_size
from .schema import Configuration, Dataset, OptionKind, OptionSpec, OptionValue
from .validator import DatasetValidator, ValidationIssue

__all__ = [
    "Configuration",
    "Dataset",
    "DatasetLoader",
    "DatasetValidator",
    "OptionKind",
    "OptionSpec",
    "OptionValue",
    "ValidationIssue",
    "bootstrap_split",
    "load_csv",
    "read_configurations",
    "resolve_train_size",
    "save_csv",
]
