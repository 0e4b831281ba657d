"""
Linear regression local model.
"""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearModel:
    """y = intercept + X @ coef."""

    coef: np.ndarray
    intercept: float
    ridge_used: bool = False

    @property
    def width(self) -> int:
        return int(self.coef.size)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(X, dtype=float) @ self.coef + self.intercept

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "linear",
            "coef": self.coef.tolist(),
            "intercept": self.intercept,
            "ridge_used": self.ridge_used,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "LinearModel":
        return cls(
            coef=np.asarray(data["coef"], dtype=float),
            intercept=float(data["intercept"]),
            ridge_used=bool(data["ridge_used"]),
        )


def fit_linear(X: np.ndarray, y: np.ndarray, ridge: float = 1e-6) -> LinearModel:
    """
    Least squares by normal equations.

    A rank-deficient design is solved with a ridge penalty on the
    coefficients (never on the intercept).

    Args:
        X: (rows, width) features
        y: Targets
        ridge: Penalty used only when the design is singular

    Returns:
        Fitted LinearModel
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    design = np.column_stack([np.ones(X.shape[0]), X])
    gram = design.T @ design
    moment = design.T @ y

    ridge_used = bool(np.linalg.matrix_rank(design) < design.shape[1])
    if ridge_used:
        penalty = np.eye(design.shape[1]) * ridge
        penalty[0, 0] = 0.0
        gram = gram + penalty
        logger.debug(f"Singular design ({X.shape[0]}x{X.shape[1]}); ridge {ridge}")

    beta = np.linalg.solve(gram, moment)
    return LinearModel(coef=beta[1:], intercept=float(beta[0]), ridge_used=ridge_used)
