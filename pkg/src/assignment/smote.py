"""
SMOTE oversampling of pseudo-labelled division data.
"""

import logging
from dataclasses import dataclass

import numpy as np
from sklearn.neighbors import NearestNeighbors

from ..errors import DataError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PseudoLabeledSet:
    """Encoded training rows labelled with their division id."""

    X: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        if self.X.shape[0] != self.labels.size:
            raise DataError(
                "LENGTH_MISMATCH",
                f"{self.X.shape[0]} rows but {self.labels.size} labels",
                {"rows": int(self.X.shape[0]), "labels": int(self.labels.size)},
            )

    def __len__(self) -> int:
        return int(self.labels.size)

    @property
    def class_counts(self) -> dict[int, int]:
        classes, counts = np.unique(self.labels, return_counts=True)
        return {int(c): int(n) for c, n in zip(classes, counts, strict=True)}


def smote_oversample(u: PseudoLabeledSet, k: int = 5, seed: int = 0) -> PseudoLabeledSet:
    """
    Raise every class to the majority class count with synthetic rows.

    Each synthetic row lies on the segment between a class member and one of
    its k nearest same-class neighbours. k is capped at class size - 1 and a
    single-row class is duplicated. Synthetic rows follow the originals in
    ascending class order.

    Args:
        u: Labelled rows
        k: Neighbour count
        seed: RNG seed

    Returns:
        Balanced PseudoLabeledSet
    """
    if k < 1:
        raise DataError("INVALID_K", f"SMOTE k must be at least 1, got {k}", {"k": k})

    counts = u.class_counts
    majority = max(counts.values())
    rng = np.random.default_rng(seed)

    extra_X: list[np.ndarray] = []
    extra_labels: list[np.ndarray] = []
    for label, size in counts.items():
        needed = majority - size
        if needed == 0:
            continue

        members = u.X[u.labels == label]
        if size == 1:
            synthetic = np.repeat(members, needed, axis=0)
        else:
            k_eff = min(k, size - 1)
            neighbours = (
                NearestNeighbors(n_neighbors=k_eff, algorithm="brute")
                .fit(members)
                .kneighbors(return_distance=False)
            )
            base = rng.integers(0, size, needed)
            pick = neighbours[base, rng.integers(0, k_eff, needed)]
            gap = rng.random(needed)[:, None]
            synthetic = members[base] + gap * (members[pick] - members[base])

        extra_X.append(synthetic)
        extra_labels.append(np.full(needed, label, dtype=u.labels.dtype))
        logger.debug(f"SMOTE class {label}: {size} -> {majority}")

    if not extra_X:
        return u

    return PseudoLabeledSet(
        X=np.vstack([u.X, *extra_X]),
        labels=np.concatenate([u.labels, *extra_labels]),
    )
