"""
Random Forest Division Classifier.

Gini trees grown on bootstrap resamples, each from its own sub-seed. Trees
are kept as flat node arrays so the forest serializes to plain JSON and
votes without the training library.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from joblib import Parallel, delayed
from sklearn.tree import DecisionTreeClassifier

from ..config import RfParams
from ..errors import DataError
from ..seeding import derive_seed
from .smote import PseudoLabeledSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FlatTree:
    """Decision tree as parallel node arrays; leaves have children -1."""

    children_left: np.ndarray
    children_right: np.ndarray
    feature: np.ndarray
    threshold: np.ndarray
    label: np.ndarray

    def predict(self, x: np.ndarray) -> int:
        # Trees were fitted on float32 features
        x32 = x.astype(np.float32).astype(float)
        node = 0
        while self.children_left[node] != -1:
            if x32[self.feature[node]] <= self.threshold[node]:
                node = self.children_left[node]
            else:
                node = self.children_right[node]
        return int(self.label[node])

    def to_dict(self) -> dict[str, Any]:
        return {
            "children_left": self.children_left.tolist(),
            "children_right": self.children_right.tolist(),
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "label": self.label.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FlatTree":
        return cls(
            children_left=np.asarray(data["children_left"], dtype=np.int64),
            children_right=np.asarray(data["children_right"], dtype=np.int64),
            feature=np.asarray(data["feature"], dtype=np.int64),
            threshold=np.asarray(data["threshold"], dtype=float),
            label=np.asarray(data["label"], dtype=np.int64),
        )

    @classmethod
    def from_estimator(cls, estimator: DecisionTreeClassifier) -> "FlatTree":
        tree = estimator.tree_
        winners = np.argmax(tree.value[:, 0, :], axis=1)
        return cls(
            children_left=np.asarray(tree.children_left, dtype=np.int64),
            children_right=np.asarray(tree.children_right, dtype=np.int64),
            feature=np.asarray(tree.feature, dtype=np.int64),
            threshold=np.asarray(tree.threshold, dtype=float),
            label=np.asarray(estimator.classes_[winners], dtype=np.int64),
        )


@dataclass(frozen=True)
class RfClassifier:
    """Forest voting for a division id."""

    trees: tuple[FlatTree, ...]
    n_trees: int
    features_per_split: int
    seed: int
    classes: tuple[int, ...]
    width: int

    @property
    def is_constant(self) -> bool:
        return len(self.classes) == 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_trees": self.n_trees,
            "features_per_split": self.features_per_split,
            "seed": self.seed,
            "classes": list(self.classes),
            "width": self.width,
            "trees": [tree.to_dict() for tree in self.trees],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RfClassifier":
        return cls(
            trees=tuple(FlatTree.from_dict(t) for t in data["trees"]),
            n_trees=int(data["n_trees"]),
            features_per_split=int(data["features_per_split"]),
            seed=int(data["seed"]),
            classes=tuple(int(c) for c in data["classes"]),
            width=int(data["width"]),
        )


def _grow_one(u: PseudoLabeledSet, features: int, min_leaf: int, seed: int) -> FlatTree:
    rng = np.random.default_rng(seed)
    rows = rng.integers(0, len(u), len(u))
    estimator = DecisionTreeClassifier(
        criterion="gini",
        max_features=features,
        min_samples_leaf=min_leaf,
        random_state=seed,
    )
    estimator.fit(u.X[rows], u.labels[rows])
    return FlatTree.from_estimator(estimator)


def fit_rf(u: PseudoLabeledSet, params: RfParams, seed: int, jobs: int = 1) -> RfClassifier:
    """
    Train the division classifier.

    Args:
        u: Balanced labelled rows
        params: n_trees, features_per_split (default ceil(sqrt(width))), min_leaf
        seed: Master seed; tree t uses derive_seed(seed, "tree", t)
        jobs: Worker threads

    Returns:
        RfClassifier. A single class gives a constant classifier with no trees.

    Raises:
        DataError: With fewer than 2 rows
    """
    if len(u) < 2:
        raise DataError("TOO_FEW_ROWS", f"Random forest needs at least 2 rows, got {len(u)}",
                        {"rows": len(u)})

    width = int(u.X.shape[1])
    classes = tuple(sorted(u.class_counts))
    features = min(width, params.features_per_split or math.ceil(math.sqrt(width)))

    if len(classes) == 1:
        logger.info(f"Single division {classes[0]}; classifier is constant")
        return RfClassifier((), params.n_trees, features, seed, classes, width)

    trees = Parallel(n_jobs=jobs, prefer="threads")(
        delayed(_grow_one)(u, features, params.min_leaf, derive_seed(seed, "tree", t))
        for t in range(params.n_trees)
    )
    logger.info(f"Random forest trained: {params.n_trees} trees, {len(classes)} classes, "
                f"{features} features per split")
    return RfClassifier(tuple(trees), params.n_trees, features, seed, classes, width)


def classify(f: RfClassifier, x: np.ndarray) -> int:
    """
    Majority vote over the trees; ties go to the lower division id.

    Raises:
        DataError: If the vector width differs from the training width
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != f.width:
        raise DataError(
            "WIDTH_MISMATCH",
            f"Feature vector has width {x.size}, classifier expects {f.width}",
            {"expected": f.width, "got": int(x.size)},
        )
    if f.is_constant:
        return f.classes[0]

    votes = np.zeros(len(f.classes), dtype=np.int64)
    position = {c: i for i, c in enumerate(f.classes)}
    for tree in f.trees:
        votes[position[tree.predict(x)]] += 1
    return f.classes[int(np.argmax(votes))]
