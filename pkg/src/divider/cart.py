"""
Dividing CART.

Greedy regression tree grown to (over)fit the training samples. Each node
caches its sample indices, mean performance and sum of squared errors so the
tree can later be cut into divisions at any depth.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np

from ..errors import DataError

if TYPE_CHECKING:
    from ..config import CartParams
    from ..dataset import Dataset
    from ..encoding import Encoder

logger = logging.getLogger(__name__)

_EPS = float(np.finfo(float).eps)


def _sse(values: np.ndarray) -> float:
    if values.size == 0:
        return 0.0
    return float(np.sum((values - values.mean()) ** 2))


def split_loss(left_perfs: Sequence[float] | np.ndarray, right_perfs: Sequence[float] | np.ndarray) -> float:
    """
    Squared-error loss of a binary split.

    Args:
        left_perfs: Performances routed left
        right_perfs: Performances routed right

    Returns:
        Sum of both sides' squared deviations from their own mean

    Raises:
        DataError: If either side is empty
    """
    left = np.asarray(left_perfs, dtype=float)
    right = np.asarray(right_perfs, dtype=float)
    if left.size == 0 or right.size == 0:
        raise DataError(
            "EMPTY_SPLIT_SIDE",
            "A split side is empty",
            {"left": int(left.size), "right": int(right.size)},
        )
    return _sse(left) + _sse(right)


@dataclass
class CartNode:
    """Tree node. Internal iff split_option is set."""

    node_id: int
    depth: int
    sample_indices: np.ndarray
    mean_performance: float
    sse: float
    split_option: int | None = None
    threshold: float | None = None
    loss: float | None = None
    left: "CartNode | None" = None
    right: "CartNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.split_option is None

    @property
    def n(self) -> int:
        return int(self.sample_indices.size)

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "node_id": self.node_id,
            "depth": self.depth,
            "sample_indices": self.sample_indices.tolist(),
            "mean_performance": self.mean_performance,
            "sse": self.sse,
        }
        if not self.is_leaf:
            assert self.left is not None and self.right is not None
            data.update(
                {
                    "split_option": self.split_option,
                    "threshold": self.threshold,
                    "loss": self.loss,
                    "left": self.left.to_dict(),
                    "right": self.right.to_dict(),
                }
            )
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CartNode":
        node = cls(
            node_id=int(data["node_id"]),
            depth=int(data["depth"]),
            sample_indices=np.asarray(data["sample_indices"], dtype=np.int64),
            mean_performance=float(data["mean_performance"]),
            sse=float(data["sse"]),
        )
        if "split_option" in data:
            node.split_option = int(data["split_option"])
            node.threshold = float(data["threshold"])
            node.loss = float(data["loss"])
            node.left = cls.from_dict(data["left"])
            node.right = cls.from_dict(data["right"])
        return node


@dataclass
class CartTree:
    """Fitted tree with id lookup and parent links."""

    root: CartNode
    width: int
    nodes: dict[int, CartNode] = field(init=False)
    parent: dict[int, int | None] = field(init=False)

    def __post_init__(self) -> None:
        self.nodes = {}
        self.parent = {self.root.node_id: None}
        stack = [self.root]
        while stack:
            node = stack.pop()
            self.nodes[node.node_id] = node
            if not node.is_leaf:
                assert node.left is not None and node.right is not None
                self.parent[node.left.node_id] = node.node_id
                self.parent[node.right.node_id] = node.node_id
                stack.extend([node.right, node.left])

    @property
    def depth(self) -> int:
        return max(node.depth for node in self.nodes.values())

    @property
    def leaves(self) -> list[CartNode]:
        return [self.nodes[i] for i in sorted(self.nodes) if self.nodes[i].is_leaf]

    def sibling(self, node_id: int) -> int | None:
        """Id of the other child of this node's parent."""
        parent_id = self.parent.get(node_id)
        if parent_id is None:
            return None
        parent = self.nodes[parent_id]
        assert parent.left is not None and parent.right is not None
        return parent.right.node_id if parent.left.node_id == node_id else parent.left.node_id

    def route(self, x: np.ndarray) -> CartNode:
        """Leaf reached by a feature vector."""
        if x.shape[-1] != self.width:
            raise DataError(
                "WIDTH_MISMATCH",
                f"Feature vector has width {x.shape[-1]}, tree expects {self.width}",
                {"expected": self.width, "got": int(x.shape[-1])},
            )
        node = self.root
        while not node.is_leaf:
            assert node.split_option is not None and node.threshold is not None
            node = node.left if x[node.split_option] <= node.threshold else node.right  # type: ignore[assignment]
        return node

    def to_dict(self) -> dict[str, Any]:
        return {"width": self.width, "root": self.root.to_dict()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CartTree":
        return cls(root=CartNode.from_dict(data["root"]), width=int(data["width"]))


@dataclass(frozen=True)
class _Candidate:
    option: int
    threshold: float
    approx_loss: float


def _screen_splits(X: np.ndarray, y: np.ndarray, min_leaf: int) -> list[_Candidate]:
    """All valid (option, midpoint) splits with prefix-sum losses, in option/threshold order."""
    n, width = X.shape
    candidates: list[_Candidate] = []
    left_counts = np.arange(min_leaf, n - min_leaf + 1)
    if left_counts.size == 0:
        return candidates

    for option in range(width):
        order = np.argsort(X[:, option], kind="stable")
        xs = X[order, option]
        ys = y[order]
        csum = np.cumsum(ys)
        csq = np.cumsum(ys * ys)

        valid = xs[left_counts - 1] < xs[left_counts]
        if not valid.any():
            continue
        i = left_counts[valid]
        left_sum = csum[i - 1]
        right_sum = csum[-1] - left_sum
        loss = (csq[i - 1] - left_sum**2 / i) + ((csq[-1] - csq[i - 1]) - right_sum**2 / (n - i))
        thresholds = (xs[i - 1] + xs[i]) / 2.0

        for threshold, value in zip(thresholds, loss, strict=True):
            candidates.append(_Candidate(option, float(threshold), float(value)))

    return candidates


def best_split(X: np.ndarray, y: np.ndarray, min_leaf: int = 1) -> tuple[int, float, float] | None:
    """
    Exhaustive best split of one node.

    Args:
        X: Node feature rows, in training index order
        y: Node performances
        min_leaf: Minimum rows per side

    Returns:
        (option, threshold, loss) or None if no split is valid. Ties go to
        the lower option, then the lower threshold.
    """
    candidates = _screen_splits(X, y, min_leaf)
    if not candidates:
        return None

    # Prefix sums can round; confirm every near-minimal candidate exactly.
    lowest = min(c.approx_loss for c in candidates)
    tolerance = 8.0 * len(y) * _EPS * (float(np.sum(y * y)) + 1.0)

    best: tuple[int, float, float] | None = None
    for c in candidates:
        if c.approx_loss > lowest + tolerance:
            continue
        mask = X[:, c.option] <= c.threshold
        loss = split_loss(y[mask], y[~mask])
        if best is None or loss < best[2]:
            best = (c.option, c.threshold, loss)
    return best


def grow_tree(X: np.ndarray, y: np.ndarray, min_leaf: int = 1, max_depth: int = 10) -> CartTree:
    """
    Grow a regression tree on encoded features.

    Args:
        X: (rows, width) feature matrix
        y: Performances
        min_leaf: Minimum rows per child
        max_depth: Depth limit (root has depth 0)

    Returns:
        CartTree with pre-order node ids
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or X.shape[0] != y.size or y.size == 0:
        raise DataError(
            "LENGTH_MISMATCH",
            f"Feature rows ({X.shape[0] if X.ndim == 2 else '?'}) and performances ({y.size}) differ",
            {"rows": int(X.shape[0]) if X.ndim == 2 else None, "performances": int(y.size)},
        )

    next_id = 0

    def build(indices: np.ndarray, depth: int) -> CartNode:
        nonlocal next_id
        values = y[indices]
        node = CartNode(
            node_id=next_id,
            depth=depth,
            sample_indices=indices,
            mean_performance=float(np.mean(values)),
            sse=_sse(values),
        )
        next_id += 1

        if node.sse == 0.0 or indices.size < 2 * min_leaf or depth >= max_depth:
            return node

        split = best_split(X[indices], values, min_leaf)
        if split is None:
            return node

        option, threshold, loss = split
        goes_left = X[indices, option] <= threshold
        node.split_option = option
        node.threshold = threshold
        node.loss = loss
        node.left = build(indices[goes_left], depth + 1)
        node.right = build(indices[~goes_left], depth + 1)
        return node

    root = build(np.arange(y.size, dtype=np.int64), 0)
    tree = CartTree(root=root, width=X.shape[1])
    logger.debug(f"Tree grown: {len(tree.nodes)} nodes, depth {tree.depth}")
    return tree


def fit_cart(train: "Dataset", encoder: "Encoder", params: "CartParams") -> CartTree:
    """
    Fit the dividing tree on a training set.

    Args:
        train: Training dataset
        encoder: Encoder fitted on train
        params: min_leaf and max_depth

    Returns:
        Fitted CartTree
    """
    X = encoder.encode_many(train.configurations)
    tree = grow_tree(X, train.performances, params.min_leaf, params.max_depth)
    logger.info(f"Dividing CART fitted: depth {tree.depth}, {len(tree.leaves)} leaves")
    return tree
