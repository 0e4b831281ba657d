"""
Regression tree local model, reusing the dividing CART.
"""

from dataclasses import dataclass
from typing import Any

import numpy as np

from ..divider import CartTree, grow_tree


@dataclass(frozen=True)
class TreeRegressor:
    """Predicts the mean performance of the leaf a row falls into."""

    tree: CartTree

    @property
    def width(self) -> int:
        return self.tree.width

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.array([self.tree.route(row).mean_performance for row in X])

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "cart", "tree": self.tree.to_dict()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TreeRegressor":
        return cls(tree=CartTree.from_dict(data["tree"]))


def fit_tree_regressor(X: np.ndarray, y: np.ndarray, min_leaf: int, max_depth: int) -> TreeRegressor:
    return TreeRegressor(tree=grow_tree(X, y, min_leaf, max_depth))
