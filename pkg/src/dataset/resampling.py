"""
Train/test resampling for evaluation runs.
"""

import logging
import re

import numpy as np

from ..errors import DataError
from .schema import Dataset

logger = logging.getLogger(__name__)

_MULTIPLE = re.compile(r"^\s*(\d+)\s*n\s*$")


def bootstrap_split(d: Dataset, train_size: int, seed: int) -> tuple[Dataset, Dataset]:
    """
    Out-of-sample bootstrap: draw train rows without replacement, test on the rest.

    Args:
        d: Full dataset
        train_size: Number of training rows, 1 <= train_size < len(d)
        seed: RNG seed

    Returns:
        (train, test) with row indices kept in ascending order

    Raises:
        DataError: If train_size is out of range
    """
    if not 1 <= train_size < len(d):
        raise DataError(
            "INVALID_TRAIN_SIZE",
            f"train_size must be in [1, {len(d) - 1}], got {train_size}",
            {"train_size": train_size, "rows": len(d)},
        )

    order = np.random.default_rng(seed).permutation(len(d))
    train_idx = np.sort(order[:train_size])
    test_idx = np.sort(order[train_size:])

    logger.debug(f"Split seed={seed}: {len(train_idx)} train / {len(test_idx)} test")
    return d.subset(train_idx), d.subset(test_idx)


def resolve_train_size(text: str | int, d: Dataset) -> int:
    """
    Resolve a train size given as a count or as a multiple of the option count.

    Args:
        text: e.g. 80, "80" or "5n" (five times the number of options)
        d: Dataset the size refers to

    Returns:
        Number of training rows
    """
    if isinstance(text, int):
        return text

    match = _MULTIPLE.match(text)
    if match:
        return int(match.group(1)) * len(d.schema)

    try:
        return int(text)
    except ValueError as e:
        raise DataError(
            "INVALID_TRAIN_SIZE",
            f"Train size must be an integer or '<k>n', got '{text}'",
            {"train_size": text},
        ) from e
