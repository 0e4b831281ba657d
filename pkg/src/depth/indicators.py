"""
Hypervolume indicators over division objective points.
"""

import logging
from collections.abc import Sequence

import numpy as np
from pymoo.indicators.hv import HV

from ..divider import Division
from ..errors import DataError
from .objectives import ObjectivePoint, ReferencePoint, as_points

logger = logging.getLogger(__name__)


def standard_hv(points: Sequence[Division | ObjectivePoint], ref: ReferencePoint) -> float:
    """
    Area of the union of rectangles spanned by the points and the reference point.

    Dominated points add nothing; points on the box boundary add zero area.

    Args:
        points: Divisions or objective points
        ref: Nadir reference point

    Returns:
        Hypervolume

    Raises:
        DataError: If a point lies outside the reference box
    """
    objectives = as_points(points)
    if not objectives:
        return 0.0

    for p in objectives:
        if p.h > ref.h_r or p.z > ref.z_r:
            raise DataError(
                "OUTSIDE_REFERENCE_BOX",
                f"Point (h={p.h}, z={p.z}) lies outside reference box ({ref.h_r}, {ref.z_r})",
                {"h": p.h, "z": p.z, **ref.to_dict()},
            )

    front = np.array([[p.h, p.z] for p in objectives], dtype=float)
    indicator = HV(ref_point=np.array([ref.h_r, ref.z_r], dtype=float))
    return float(indicator(front))


def mu_hv(points: Sequence[Division | ObjectivePoint], ref: ReferencePoint) -> float:
    """
    Mean rectangle area of all points to the reference point.

    Every point counts, dominated or duplicated. When h_r is zero (every
    division has zero error) the h factor is taken as 1.

    Args:
        points: Divisions or objective points
        ref: Nadir reference point

    Returns:
        Averaged hypervolume
    """
    objectives = as_points(points)
    if not objectives:
        raise DataError("EMPTY_INPUT", "mu_hv needs at least one division")

    h = np.array([p.h for p in objectives])
    z = np.array([p.z for p in objectives])
    h_factor = np.abs(ref.h_r - h) if ref.h_r != 0 else np.ones_like(h)
    return float(np.mean(h_factor * np.abs(ref.z_r - z)))
