"""Dividing CART, clustering dividers and the divisions cut from them."""

from .cart import CartNode, CartTree, best_split, fit_cart, grow_tree, split_loss
from .clustering import CLUSTERERS, NO_NODE, Clusterer, cluster_labels, divisions_from_labels
from .divisions import Division, division_membership, extract_divisions, merge_small_divisions

__all__ = [
    "CLUSTERERS",
    "NO_NODE",
    "CartNode",
    "CartTree",
    "Clusterer",
    "Division",
    "best_split",
    "cluster_labels",
    "division_membership",
    "divisions_from_labels",
    "extract_divisions",
    "fit_cart",
    "grow_tree",
    "merge_small_divisions",
    "split_loss",
]
