"""Division depth selection by hypervolume indicators."""

from .adapter import DepthCandidate, Indicator, adapt_depth, candidate_reference, select_depth
from .indicators import mu_hv, standard_hv
from .objectives import ObjectivePoint, ReferencePoint, division_objectives, reference_point

__all__ = [
    "DepthCandidate",
    "Indicator",
    "ObjectivePoint",
    "ReferencePoint",
    "adapt_depth",
    "candidate_reference",
    "division_objectives",
    "mu_hv",
    "reference_point",
    "select_depth",
    "standard_hv",
]
