"""
Local learner specifications.

A discriminated union on ``kind`` so specs round-trip through YAML run files
and the model file unchanged.
"""

from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class LinearSpec(BaseModel):
    """Ordinary least squares with a ridge fallback on singular designs."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["linear"] = "linear"
    ridge: float = Field(default=1e-6, gt=0)


class CartSpec(BaseModel):
    """Regression tree used as the local model."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["cart"] = "cart"
    min_leaf: int = Field(default=1, ge=1)
    max_depth: int = Field(default=10, ge=1)


class NetSpec(BaseModel):
    """
    Single hidden layer ReLU network with L1-penalised weights.

    tune searches a small width and lambda grid. Setting hidden_units or
    l1_lambda without tune turns the search off so the given values are used.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["rnet"] = "rnet"
    hidden_units: int = Field(default=16, ge=1)
    l1_lambda: float = Field(default=0.01, ge=0)
    learning_rate: float = Field(default=0.01, gt=0)
    epochs: int = Field(default=1000, ge=1)
    seed: int = 0
    tune: bool = True

    @model_validator(mode="before")
    @classmethod
    def explicit_shape_disables_tune(cls, data: Any) -> Any:
        if isinstance(data, dict) and "tune" not in data and ({"hidden_units", "l1_lambda"} & data.keys()):
            return {**data, "tune": False}
        return data


LocalLearnerSpec = Annotated[LinearSpec | CartSpec | NetSpec, Field(discriminator="kind")]

LEARNER_KINDS = ("linear", "cart", "rnet")


def default_spec(kind: str) -> LinearSpec | CartSpec | NetSpec:
    """Default spec for a learner kind."""
    match kind:
        case "linear":
            return LinearSpec()
        case "cart":
            return CartSpec()
        case "rnet":
            return NetSpec()
        case _:
            raise ValueError(f"Unknown learner kind: {kind}")


def learner_min_samples(spec: LinearSpec | CartSpec | NetSpec, width: int) -> int:
    """
    Smallest division a learner can fit without degenerating.

    Args:
        spec: Learner spec
        width: Encoded feature width

    Returns:
        width + 1 for linear (one per coefficient plus intercept), else 1
    """
    if isinstance(spec, LinearSpec):
        return width + 1
    return 1
