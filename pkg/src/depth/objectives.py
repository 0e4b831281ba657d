"""
Division objectives and the nadir reference point.

Each division is a point (h, z): h is its mean squared error around the
division mean, z is minus its sample count. Both are minimised.
"""

from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

import numpy as np

from ..divider import Division
from ..errors import DataError


@dataclass(frozen=True)
class ObjectivePoint:
    h: float
    z: float


@dataclass(frozen=True)
class ReferencePoint:
    """Nadir corner the indicator areas are measured against."""

    h_r: float
    z_r: float

    def to_dict(self) -> dict[str, Any]:
        return {"h_r": self.h_r, "z_r": self.z_r}


def division_objectives(div: Division) -> tuple[float, float]:
    """
    Objectives of a division.

    Returns:
        (h, z) with h the population MSE of its performances and z = -n
    """
    if div.n < 1:
        raise DataError("EMPTY_DIVISION", f"Division {div.id} has no samples", {"id": div.id})
    return div.h, -float(div.n)


def as_point(item: Division | ObjectivePoint) -> ObjectivePoint:
    if isinstance(item, ObjectivePoint):
        return item
    h, z = division_objectives(item)
    return ObjectivePoint(h, z)


def as_points(items: Iterable[Division | ObjectivePoint]) -> list[ObjectivePoint]:
    return [as_point(item) for item in items]


def reference_point(all_divisions: Iterable[Division | ObjectivePoint]) -> ReferencePoint:
    """
    Nadir reference point over every division of every depth candidate.

    Args:
        all_divisions: Divisions (or objective points) pooled across candidates

    Returns:
        ReferencePoint with h_r = 1.1 * max h and z_r = 0.9 * max z

    Raises:
        DataError: If no divisions are given
    """
    unique = {(p.h, p.z) for p in as_points(all_divisions)}
    if not unique:
        raise DataError("EMPTY_INPUT", "Reference point needs at least one division")

    hs = np.array([h for h, _ in unique])
    zs = np.array([z for _, z in unique])
    # max z is the smallest division; 0.9 moves it toward zero
    return ReferencePoint(h_r=1.1 * float(hs.max()), z_r=0.9 * float(zs.max()))
