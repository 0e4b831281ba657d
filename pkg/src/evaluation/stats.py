"""
Statistical ranking of treatments.

Vargha-Delaney effect size and a Scott-Knott ranking whose splits must pass
both a bootstrap test on the mean difference and an effect size threshold.
"""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..errors import DataError
from ..seeding import derive_seed

logger = logging.getLogger(__name__)


def a12(a: Sequence[float] | np.ndarray, b: Sequence[float] | np.ndarray) -> float:
    """
    Probability that a draw from a is lower than a draw from b, ties counting half.

    Args:
        a: First sample (lower is better)
        b: Second sample

    Returns:
        Effect size in [0, 1]
    """
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if x.size == 0 or y.size == 0:
        raise DataError("EMPTY_INPUT", "a12 needs two non-empty samples")
    less = int(np.sum(x[:, None] < y[None, :]))
    ties = int(np.sum(x[:, None] == y[None, :]))
    return (less + 0.5 * ties) / (x.size * y.size)


def summarize(values: Sequence[float] | np.ndarray) -> dict[str, float]:
    """Mean, median and interquartile range."""
    v = np.asarray(values, dtype=float)
    p25, p50, p75 = np.percentile(v, [25, 50, 75])
    return {"mean": float(v.mean()), "median": float(p50), "iqr": float(p75 - p25)}


def bootstrap_differs(
    lower: np.ndarray,
    upper: np.ndarray,
    conf: float,
    boot_iters: int,
    rng: np.random.Generator,
) -> bool:
    """Two-sided percentile bootstrap: does the mean-difference interval exclude 0?"""
    lower_means = lower[rng.integers(0, lower.size, (boot_iters, lower.size))].mean(axis=1)
    upper_means = upper[rng.integers(0, upper.size, (boot_iters, upper.size))].mean(axis=1)
    alpha = 1.0 - conf
    low, high = np.percentile(upper_means - lower_means, [100 * alpha / 2, 100 * (1 - alpha / 2)])
    return bool(low > 0 or high < 0)


@dataclass(frozen=True)
class SkGroup:
    rank: int
    treatments: tuple[str, ...]


@dataclass(frozen=True)
class SkRanking:
    """Rank groups, best (lowest mean) first."""

    groups: tuple[SkGroup, ...]
    conf: float
    a12_min: float
    boot_iters: int
    stats: dict[str, dict[str, float]] = field(default_factory=dict)

    def rank_of(self, name: str) -> int:
        for group in self.groups:
            if name in group.treatments:
                return group.rank
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "groups": [{"rank": g.rank, "treatments": list(g.treatments)} for g in self.groups],
            "parameters": {"conf": self.conf, "a12_min": self.a12_min, "boot_iters": self.boot_iters},
            "treatments": {
                name: {"rank": self.rank_of(name), **self.stats[name]} for name in sorted(self.stats)
            },
        }


def best_cut(items: Sequence[tuple[str, np.ndarray]]) -> tuple[int, float]:
    """Cut index maximising the between-part squared mean difference (first on ties)."""
    pooled = np.concatenate([values for _, values in items])
    grand = pooled.mean()
    best_i, best_delta = 1, -1.0
    for i in range(1, len(items)):
        left = np.concatenate([values for _, values in items[:i]])
        right = np.concatenate([values for _, values in items[i:]])
        delta = (left.size / pooled.size) * (left.mean() - grand) ** 2 + (
            right.size / pooled.size
        ) * (right.mean() - grand) ** 2
        if delta > best_delta:
            best_i, best_delta = i, float(delta)
    return best_i, best_delta


def scott_knott(
    treatments: Mapping[str, Sequence[float]],
    conf: float = 0.99,
    a12_min: float = 0.6,
    boot_iters: int = 1000,
    seed: int = 0,
) -> SkRanking:
    """
    Rank treatments (lower is better) into statistically distinct groups.

    Args:
        treatments: Name to observations
        conf: Bootstrap confidence level
        a12_min: Smallest effect size that counts as a difference
        boot_iters: Bootstrap resamples per split test
        seed: RNG seed

    Returns:
        SkRanking

    Raises:
        DataError: With no treatments or a treatment with fewer than 2 observations
    """
    if not treatments:
        raise DataError("EMPTY_INPUT", "Scott-Knott needs at least one treatment")
    for name, values in treatments.items():
        if len(values) < 2:
            raise DataError("TOO_FEW_OBSERVATIONS",
                            f"Treatment '{name}' has {len(values)} observations, needs 2",
                            {"treatment": name, "observations": len(values)})

    items = sorted(
        ((name, np.asarray(values, dtype=float)) for name, values in treatments.items()),
        key=lambda item: (float(item[1].mean()), item[0]),
    )

    groups: list[tuple[str, ...]] = []

    def divide(start: int, end: int) -> None:
        segment = items[start:end]
        if len(segment) > 1:
            cut, delta = best_cut(segment)
            lower = np.concatenate([values for _, values in segment[:cut]])
            upper = np.concatenate([values for _, values in segment[cut:]])
            rng = np.random.default_rng(derive_seed(seed, "scott-knott", start, end))
            effect = a12(lower, upper)
            if effect >= a12_min and bootstrap_differs(lower, upper, conf, boot_iters, rng):
                logger.debug(f"Split {[n for n, _ in segment]} at {cut}: delta={delta:.6g}, a12={effect:.3f}")
                divide(start, start + cut)
                divide(start + cut, end)
                return
        groups.append(tuple(name for name, _ in segment))

    divide(0, len(items))

    ranking = SkRanking(
        groups=tuple(SkGroup(rank=i + 1, treatments=g) for i, g in enumerate(groups)),
        conf=conf,
        a12_min=a12_min,
        boot_iters=boot_iters,
        stats={name: summarize(values) for name, values in items},
    )
    logger.info(f"Scott-Knott: {len(items)} treatments in {len(groups)} rank groups")
    return ranking
