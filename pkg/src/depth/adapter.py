"""
Depth Adapter.

Enumerates every candidate depth of the dividing tree, scores each cut with
an indicator against one shared reference point and keeps the best depth.
"""

import logging
from dataclasses import dataclass
from typing import Any, Literal

from joblib import Parallel, delayed

from ..divider import CartTree, Division, extract_divisions
from .indicators import mu_hv, standard_hv
from .objectives import ReferencePoint, reference_point

logger = logging.getLogger(__name__)

Indicator = Literal["mu_hv", "hv"]


@dataclass(frozen=True)
class DepthCandidate:
    """One depth with its divisions and indicator values."""

    d: int
    divisions: tuple[Division, ...]
    mu_hv: float
    hv: float = 0.0

    def score(self, indicator: Indicator) -> float:
        return self.mu_hv if indicator == "mu_hv" else self.hv

    def to_dict(self) -> dict[str, Any]:
        return {
            "d": self.d,
            "divisions": [
                {"id": div.id, "n": div.n, "h": div.h, "z": div.z} for div in self.divisions
            ],
            "mu_hv": self.mu_hv,
            "hv": self.hv,
        }


def select_depth(candidates: list[DepthCandidate], indicator: Indicator = "mu_hv") -> int | None:
    """
    Depth with the highest indicator value; ties go to the smaller depth.

    Returns:
        Selected depth, or None when there are no candidates
    """
    best: DepthCandidate | None = None
    for candidate in sorted(candidates, key=lambda c: c.d):
        if best is None or candidate.score(indicator) > best.score(indicator):
            best = candidate
    return None if best is None else best.d


def candidate_reference(candidates: list[DepthCandidate]) -> ReferencePoint:
    """Shared reference point over every candidate's divisions."""
    return reference_point(div for c in candidates for div in c.divisions)


def adapt_depth(
    tree: CartTree,
    indicator: Indicator = "mu_hv",
    jobs: int = 1,
) -> tuple[int | None, list[DepthCandidate]]:
    """
    Choose the division depth for a fitted tree.

    Args:
        tree: Dividing tree
        indicator: mu_hv (default) or hv
        jobs: Worker threads for per-depth extraction

    Returns:
        (selected depth, candidates for d = 1..tree depth). A single-leaf
        tree gives (None, []).
    """
    if tree.depth == 0:
        logger.warning("Dividing tree is a single leaf; no depth to adapt")
        return None, []

    depths = range(1, tree.depth + 1)
    cuts = Parallel(n_jobs=jobs, prefer="threads")(
        delayed(extract_divisions)(tree, d) for d in depths
    )

    ref = reference_point(div for divisions in cuts for div in divisions)
    candidates = [
        DepthCandidate(
            d=d,
            divisions=tuple(divisions),
            mu_hv=mu_hv(divisions, ref),
            hv=standard_hv(divisions, ref),
        )
        for d, divisions in zip(depths, cuts, strict=True)
    ]

    selected = select_depth(candidates, indicator)
    for c in candidates:
        logger.debug(f"d={c.d}: {len(c.divisions)} divisions, mu_hv={c.mu_hv:.6g}, hv={c.hv:.6g}")
    logger.info(f"Adapted depth: d={selected} by {indicator} over {len(candidates)} candidates")
    return selected, candidates
