"""
Regularized feed-forward network local model.

One ReLU hidden layer and a linear output, trained by full-batch gradient
descent on mean squared error plus an L1 penalty on the weights. Inputs and
targets are min-max scaled inside the model.
"""

import logging
from dataclasses import dataclass, replace
from itertools import product
from typing import Any

import numpy as np

from ..errors import DataError

logger = logging.getLogger(__name__)

TUNE_HIDDEN_UNITS = (8, 16)
TUNE_L1_LAMBDAS = (0.0, 0.01, 0.1)
TUNE_HOLDOUT = 0.2

# finite differences carry ~1e-11 of round-off at eps=1e-5
GRAD_CHECK_FLOOR = 1e-8


@dataclass(frozen=True)
class NetModel:
    """Network parameters plus the scaling fitted on its training data."""

    w1: np.ndarray  # (hidden, width)
    b1: np.ndarray  # (hidden,)
    w2: np.ndarray  # (hidden,)
    b2: float
    l1_lambda: float
    x_min: np.ndarray
    x_span: np.ndarray
    y_min: float = 0.0
    y_span: float = 1.0
    final_objective: float = float("nan")

    @property
    def width(self) -> int:
        return int(self.w1.shape[1])

    @property
    def hidden_units(self) -> int:
        return int(self.w1.shape[0])

    def scale_inputs(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=float) - self.x_min) / self.x_span

    def forward(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Pre-activations and outputs for already scaled inputs."""
        pre = X @ self.w1.T + self.b1
        out = np.maximum(pre, 0.0) @ self.w2 + self.b2
        return pre, out

    def objective(self, X: np.ndarray, y: np.ndarray) -> float:
        """Mean squared error plus L1 penalty, on scaled data."""
        _, out = self.forward(X)
        penalty = self.l1_lambda * (np.abs(self.w1).sum() + np.abs(self.w2).sum())
        return float(np.mean((out - y) ** 2) + penalty)

    def gradients(self, X: np.ndarray, y: np.ndarray) -> dict[str, Any]:
        """Analytic gradient of objective; the L1 subgradient at 0 is 0."""
        pre, out = self.forward(X)
        active = np.maximum(pre, 0.0)
        residual = 2.0 * (out - y) / y.size

        g_w2 = active.T @ residual + self.l1_lambda * np.sign(self.w2)
        g_b2 = float(residual.sum())
        g_pre = np.outer(residual, self.w2) * (pre > 0)
        g_w1 = g_pre.T @ X + self.l1_lambda * np.sign(self.w1)
        g_b1 = g_pre.sum(axis=0)
        return {"w1": g_w1, "b1": g_b1, "w2": g_w2, "b2": g_b2}

    def predict(self, X: np.ndarray) -> np.ndarray:
        _, out = self.forward(self.scale_inputs(np.atleast_2d(X)))
        return out * self.y_span + self.y_min

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "rnet",
            "w1": self.w1.tolist(),
            "b1": self.b1.tolist(),
            "w2": self.w2.tolist(),
            "b2": self.b2,
            "l1_lambda": self.l1_lambda,
            "x_min": self.x_min.tolist(),
            "x_span": self.x_span.tolist(),
            "y_min": self.y_min,
            "y_span": self.y_span,
            "final_objective": self.final_objective,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "NetModel":
        return cls(
            w1=np.asarray(data["w1"], dtype=float),
            b1=np.asarray(data["b1"], dtype=float),
            w2=np.asarray(data["w2"], dtype=float),
            b2=float(data["b2"]),
            l1_lambda=float(data["l1_lambda"]),
            x_min=np.asarray(data["x_min"], dtype=float),
            x_span=np.asarray(data["x_span"], dtype=float),
            y_min=float(data["y_min"]),
            y_span=float(data["y_span"]),
            final_objective=float("nan" if data.get("final_objective") is None else data["final_objective"]),
        )


def init_net(width: int, hidden_units: int, l1_lambda: float, seed: int) -> NetModel:
    """He-initialised network with unit scaling."""
    rng = np.random.default_rng(seed)
    return NetModel(
        w1=rng.normal(0.0, np.sqrt(2.0 / width), size=(hidden_units, width)),
        b1=np.zeros(hidden_units),
        w2=rng.normal(0.0, np.sqrt(1.0 / hidden_units), size=hidden_units),
        b2=0.0,
        l1_lambda=l1_lambda,
        x_min=np.zeros(width),
        x_span=np.ones(width),
    )


def _l1_step(weights: np.ndarray, grad: np.ndarray, learning_rate: float, l1_lambda: float) -> np.ndarray:
    """
    Proximal step: a plain step on the squared error, then soft-thresholding.

    grad holds the L1 subgradient, which is taken back out first. A weight
    whose step lands within learning_rate * l1_lambda of zero becomes exactly 0.
    """
    if l1_lambda == 0:
        return weights - learning_rate * grad
    smooth = weights - learning_rate * (grad - l1_lambda * np.sign(weights))
    return np.sign(smooth) * np.maximum(np.abs(smooth) - learning_rate * l1_lambda, 0.0)


def train_net(
    net: NetModel,
    X: np.ndarray,
    y: np.ndarray,
    learning_rate: float,
    epochs: int,
) -> tuple[NetModel, list[float]]:
    """
    Full-batch gradient descent on scaled data.

    Args:
        net: Starting parameters
        X: Scaled inputs
        y: Scaled targets
        learning_rate: Step size
        epochs: Number of steps

    Returns:
        (trained net, objective before every step and after the last)
    """
    history = [net.objective(X, y)]
    for _ in range(epochs):
        g = net.gradients(X, y)
        net = replace(
            net,
            w1=_l1_step(net.w1, g["w1"], learning_rate, net.l1_lambda),
            b1=net.b1 - learning_rate * g["b1"],
            w2=_l1_step(net.w2, g["w2"], learning_rate, net.l1_lambda),
            b2=net.b2 - learning_rate * g["b2"],
        )
        history.append(net.objective(X, y))
    return replace(net, final_objective=history[-1]), history


def _span(values: np.ndarray) -> np.ndarray:
    span = values.max(axis=0) - values.min(axis=0)
    return np.where(span > 0, span, 1.0)


def fit_net(
    X: np.ndarray,
    y: np.ndarray,
    hidden_units: int = 16,
    l1_lambda: float = 0.01,
    learning_rate: float = 0.01,
    epochs: int = 1000,
    seed: int = 0,
    tune: bool = True,
) -> NetModel:
    """
    Fit a network, optionally picking width and penalty from a small grid.

    With tune, the grid pair with the lowest holdout error is retrained on
    every row.

    Args:
        X: (rows, width) raw features
        y: Raw targets
        hidden_units: Hidden layer width when not tuning
        l1_lambda: L1 strength when not tuning
        learning_rate: Step size
        epochs: Gradient steps
        seed: Initialisation seed
        tune: Search the grid instead of using hidden_units and l1_lambda

    Returns:
        Trained NetModel
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    x_min = X.min(axis=0)
    x_span = _span(X)
    y_min = float(y.min())
    y_span = float(_span(y[:, None])[0])
    Xs = (X - x_min) / x_span
    ys = (y - y_min) / y_span

    if tune:
        hidden_units, l1_lambda = _tune(Xs, ys, learning_rate, epochs, seed)

    net, _ = train_net(init_net(X.shape[1], hidden_units, l1_lambda, seed), Xs, ys, learning_rate, epochs)
    return replace(net, x_min=x_min, x_span=x_span, y_min=y_min, y_span=y_span)


def _tune(Xs: np.ndarray, ys: np.ndarray, learning_rate: float, epochs: int, seed: int) -> tuple[int, float]:
    """
    Pick (hidden units, lambda) from the grid.

    Every pair trains from the same seed on all but a seeded holdout share of
    the rows and is scored by holdout squared error. Fewer than 5 rows leave no
    holdout, so the lowest final training objective wins instead.
    """
    grid = list(product(TUNE_HIDDEN_UNITS, TUNE_L1_LAMBDAS))
    rows = ys.size
    if rows < 5:
        scores = [
            train_net(init_net(Xs.shape[1], units, lam, seed), Xs, ys, learning_rate, epochs)[0].final_objective
            for units, lam in grid
        ]
    else:
        order = np.random.default_rng(seed).permutation(rows)
        cut = max(1, int(round(rows * TUNE_HOLDOUT)))
        held, kept = order[:cut], order[cut:]
        scores = []
        for units, lam in grid:
            net, _ = train_net(init_net(Xs.shape[1], units, lam, seed), Xs[kept], ys[kept], learning_rate, epochs)
            _, out = net.forward(Xs[held])
            scores.append(float(np.mean((out - ys[held]) ** 2)))

    for (units, lam), score in zip(grid, scores):
        logger.debug(f"rnet hidden={units} lambda={lam}: score {score:.6g}")
    return grid[int(np.argmin(scores))]


def _flatten(net: NetModel) -> np.ndarray:
    return np.concatenate([net.w1.ravel(), net.b1, net.w2, [net.b2]])


def _unflatten(net: NetModel, theta: np.ndarray) -> NetModel:
    hidden, width = net.w1.shape
    cut_w1 = hidden * width
    return replace(
        net,
        w1=theta[:cut_w1].reshape(hidden, width),
        b1=theta[cut_w1 : cut_w1 + hidden],
        w2=theta[cut_w1 + hidden : cut_w1 + 2 * hidden],
        b2=float(theta[-1]),
    )


def grad_check(net: NetModel, X: np.ndarray, y: np.ndarray, eps: float = 1e-5) -> float:
    """
    Compare analytic gradients with central finite differences.

    X and y are used as given (no scaling).

    Args:
        net: Network to check
        X: Inputs
        y: Targets
        eps: Finite difference step, in (0, 1e-2]

    Returns:
        Largest per-parameter |analytic - numeric| / (|analytic| + |numeric|),
        with the denominator held at GRAD_CHECK_FLOOR or above

    Raises:
        DataError: If eps is out of range
    """
    if not 0 < eps <= 1e-2:
        raise DataError("INVALID_EPSILON", f"eps must be in (0, 1e-2], got {eps}", {"eps": eps})

    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    g = net.gradients(X, y)
    analytic = np.concatenate([g["w1"].ravel(), g["b1"], g["w2"], [g["b2"]]])

    theta = _flatten(net)
    numeric = np.zeros_like(theta)
    for i in range(theta.size):
        step = np.zeros_like(theta)
        step[i] = eps
        upper = _unflatten(net, theta + step).objective(X, y)
        lower = _unflatten(net, theta - step).objective(X, y)
        numeric[i] = (upper - lower) / (2.0 * eps)

    denominator = np.maximum(np.abs(analytic) + np.abs(numeric), GRAD_CHECK_FLOOR)
    return float(np.max(np.abs(analytic - numeric) / denominator))
