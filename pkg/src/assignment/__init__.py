"""Routing new configurations to divisions."""

from .forest import FlatTree, RfClassifier, classify, fit_rf
from .smote import PseudoLabeledSet, smote_oversample

__all__ = ["FlatTree", "PseudoLabeledSet", "RfClassifier", "classify", "fit_rf", "smote_oversample"]
