"""
Local Model Factory.

Fits the configured learner on one division's rows and rebuilds fitted
models from their serialized form.
"""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from ..errors import DataError
from .linear import LinearModel, fit_linear
from .net import NetModel, fit_net
from .spec import CartSpec, LinearSpec, NetSpec
from .tree import TreeRegressor, fit_tree_regressor

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstantModel:
    """Predicts one value everywhere."""

    value: float
    width: int

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.full(np.atleast_2d(X).shape[0], self.value)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "constant", "value": self.value, "width": self.width}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ConstantModel":
        return cls(value=float(data["value"]), width=int(data["width"]))


LocalModel = LinearModel | TreeRegressor | NetModel | ConstantModel


def fit_local(
    spec: LinearSpec | CartSpec | NetSpec,
    X: np.ndarray,
    y: np.ndarray,
    seed: int | None = None,
) -> LocalModel:
    """
    Fit a local model on one division.

    Args:
        spec: Learner spec
        X: (rows, width) encoded features
        y: Performances
        seed: Overrides the spec's seed for seeded learners

    Returns:
        Fitted local model. A single row under linear or rnet gives a
        ConstantModel.

    Raises:
        DataError: If X and y disagree in length or are empty
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = np.asarray(y, dtype=float)
    if X.shape[0] != y.size or y.size == 0:
        raise DataError(
            "LENGTH_MISMATCH",
            f"Local fit needs matching non-empty X and y, got {X.shape[0]} and {y.size}",
            {"rows": int(X.shape[0]), "targets": int(y.size)},
        )
    if X.shape[1] < 1:
        raise DataError("WIDTH_MISMATCH", "Local fit needs at least one feature", {"width": 0})

    if y.size == 1 and not isinstance(spec, CartSpec):
        logger.warning(f"Degenerate {spec.kind} fit on a single sample; using a constant model")
        return ConstantModel(value=float(y[0]), width=X.shape[1])

    match spec:
        case LinearSpec():
            return fit_linear(X, y, spec.ridge)
        case CartSpec():
            return fit_tree_regressor(X, y, spec.min_leaf, spec.max_depth)
        case NetSpec():
            return fit_net(
                X,
                y,
                hidden_units=spec.hidden_units,
                l1_lambda=spec.l1_lambda,
                learning_rate=spec.learning_rate,
                epochs=spec.epochs,
                seed=spec.seed if seed is None else seed,
                tune=spec.tune,
            )


def predict_local(model: LocalModel, x: np.ndarray) -> float:
    """
    Predict one feature vector.

    Raises:
        DataError: If the vector width differs from the training width
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != model.width:
        raise DataError(
            "WIDTH_MISMATCH",
            f"Feature vector has width {x.size}, model expects {model.width}",
            {"expected": model.width, "got": int(x.size)},
        )
    return float(model.predict(x[None, :])[0])


def local_from_dict(data: dict[str, Any]) -> LocalModel:
    """Rebuild a local model from its to_dict output."""
    match data["kind"]:
        case "linear":
            return LinearModel.from_dict(data)
        case "cart":
            return TreeRegressor.from_dict(data)
        case "rnet":
            return NetModel.from_dict(data)
        case "constant":
            return ConstantModel.from_dict(data)
        case other:
            raise DataError("UNSUPPORTED_MODEL_FORMAT", f"Unknown local model kind '{other}'",
                            {"kind": other})
