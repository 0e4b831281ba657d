"""
Divisions of the training samples cut from the dividing CART.
"""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from ..errors import DataError
from .cart import CartNode, CartTree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Division:
    """A subset of training rows with locally smooth performance."""

    id: int
    node_id: int
    sample_indices: tuple[int, ...]
    mean_performance: float
    n: int
    h: float
    z: float

    @classmethod
    def from_node(cls, division_id: int, node: CartNode) -> "Division":
        n = node.n
        return cls(
            id=division_id,
            node_id=node.node_id,
            sample_indices=tuple(int(i) for i in node.sample_indices),
            mean_performance=node.mean_performance,
            n=n,
            h=node.sse / n,
            z=-float(n),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "node_id": self.node_id,
            "sample_indices": list(self.sample_indices),
            "mean_performance": self.mean_performance,
            "n": self.n,
            "h": self.h,
            "z": self.z,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Division":
        return cls(
            id=int(data["id"]),
            node_id=int(data["node_id"]),
            sample_indices=tuple(int(i) for i in data["sample_indices"]),
            mean_performance=float(data["mean_performance"]),
            n=int(data["n"]),
            h=float(data["h"]),
            z=float(data["z"]),
        )


def extract_divisions(tree: CartTree, d: int) -> list[Division]:
    """
    Cut the tree at depth d.

    Args:
        tree: Fitted dividing tree
        d: Depth, at least 1

    Returns:
        Leaves shallower than d plus every node at depth d, in pre-order

    Raises:
        DataError: If d < 1
    """
    if d < 1:
        raise DataError("INVALID_DEPTH", f"Division depth must be at least 1, got {d}",
                        {"depth": d, "tree_depth": tree.depth})

    nodes: list[CartNode] = []
    stack = [tree.root]
    while stack:
        node = stack.pop()
        if node.is_leaf or node.depth == d:
            nodes.append(node)
            continue
        assert node.left is not None and node.right is not None
        stack.extend([node.right, node.left])

    divisions = [Division.from_node(i, node) for i, node in enumerate(nodes)]
    logger.debug(f"d={d}: {len(divisions)} divisions, sizes {[div.n for div in divisions]}")
    return divisions


def merge_small_divisions(divs: list[Division], tree: CartTree, min_size: int) -> list[Division]:
    """
    Merge undersized divisions into their parent while a sibling is present.

    Repeats until no undersized division has a sibling left to merge with.

    Args:
        divs: Divisions from extract_divisions
        tree: The tree they were cut from
        min_size: Smallest acceptable division

    Returns:
        Divisions with ids reassigned in pre-order
    """
    if min_size < 1:
        raise DataError("INVALID_MIN_SIZE", f"min_size must be at least 1, got {min_size}",
                        {"min_size": min_size})

    present = {div.node_id for div in divs}
    merged_any = True
    while merged_any:
        merged_any = False
        for node_id in sorted(present):
            if tree.nodes[node_id].n >= min_size:
                continue
            sibling = tree.sibling(node_id)
            if sibling is None or sibling not in present:
                continue
            parent_id = tree.parent[node_id]
            assert parent_id is not None
            present -= {node_id, sibling}
            present.add(parent_id)
            logger.debug(f"Merged nodes {node_id} and {sibling} into {parent_id}")
            merged_any = True
            break

    merged = [Division.from_node(i, tree.nodes[node_id]) for i, node_id in enumerate(sorted(present))]
    if len(merged) != len(divs):
        logger.info(f"Merged small divisions: {len(divs)} -> {len(merged)} (min_size={min_size})")
    return merged


def division_membership(divs: list[Division], rows: int) -> np.ndarray:
    """Division id of every training row."""
    labels = np.full(rows, -1, dtype=np.int64)
    for div in divs:
        labels[list(div.sample_indices)] = div.id
    return labels
