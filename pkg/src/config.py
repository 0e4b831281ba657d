"""
Configuration.

Environment settings (loaded through python-dotenv), validated parameter
models for every pipeline stage, and the optional YAML run file.
"""

import logging
import os
from pathlib import Path
from typing import Any, Literal

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .encoding import Scheme
from .encoding.encoder import SCHEME_ALIASES
from .errors import UsageError
from .learners.spec import CartSpec, LinearSpec, LocalLearnerSpec, NetSpec

logger = logging.getLogger(__name__)

Indicator = Literal["mu_hv", "hv"]
Divider = Literal["cart", "kmeans", "agglomerative", "dbscan"]
Command = Literal["train", "predict", "evaluate", "compare", "inspect-divisions", "encode"]


class Settings(BaseModel):
    """Process-wide settings read from the environment."""

    log_level: str = "INFO"
    jobs: int = Field(default=1, ge=1)
    default_seed: int = 0

    @classmethod
    def from_env(cls) -> "Settings":
        """Load .env (if present) and read settings from the environment."""
        load_dotenv()
        try:
            return cls(
                log_level=os.getenv("LOG_LEVEL", "INFO").upper(),
                jobs=int(os.getenv("DAL_JOBS", "1")),
                default_seed=int(os.getenv("DAL_SEED", "0")),
            )
        except (ValueError, ValidationError) as e:
            raise UsageError("INVALID_ENVIRONMENT", f"Invalid environment setting: {e}") from e


class CartParams(BaseModel):
    """Dividing tree growth limits."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    min_leaf: int = Field(default=1, ge=1)
    max_depth: int = Field(default=10, ge=1)


class SmoteParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    k: int = Field(default=5, ge=1)


class RfParams(BaseModel):
    """Random forest division classifier parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_trees: int = Field(default=100, ge=1)
    # None means ceil(sqrt(width))
    features_per_split: int | None = Field(default=None, ge=1)
    min_leaf: int = Field(default=1, ge=1)


class ClusterParams(BaseModel):
    """Clustering divider parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    # None means as many clusters as the CART would make divisions
    n_clusters: int | None = Field(default=None, ge=1)
    eps: float = Field(default=0.5, gt=0)
    min_samples: int = Field(default=5, ge=1)


class MergeParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    # None means max(4, learner minimum)
    min_size: int | None = Field(default=None, ge=1)


class DalConfig(BaseModel):
    """Everything train_dal needs besides data and seed."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    scheme: Scheme = Scheme.LABEL
    learner: LocalLearnerSpec = Field(default_factory=NetSpec)
    depth: int | None = Field(default=None, ge=1)
    indicator: Indicator = "mu_hv"
    divider: Divider = "cart"
    cart: CartParams = Field(default_factory=CartParams)
    smote: SmoteParams = Field(default_factory=SmoteParams)
    rf: RfParams = Field(default_factory=RfParams)
    merge: MergeParams = Field(default_factory=MergeParams)
    cluster: ClusterParams = Field(default_factory=ClusterParams)
    jobs: int = Field(default=1, ge=1)

    @field_validator("scheme", mode="before")
    @classmethod
    def _scheme_alias(cls, value: Any) -> Any:
        if isinstance(value, str) and value in SCHEME_ALIASES:
            return SCHEME_ALIASES[value]
        return value

    @field_validator("depth", mode="before")
    @classmethod
    def _depth_auto(cls, value: Any) -> Any:
        if value == "auto":
            return None
        return value


class RunConfig(BaseModel):
    """A parsed CLI invocation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command
    data: Path | None = None
    model: Path | None = None
    input: Path | None = None
    out: Path | None = None
    kinds: Path | None = None
    format: Literal["json", "table"] = "json"
    seed: int = 0
    runs: int = Field(default=30, ge=1)
    train_size: str | None = None
    recipes: tuple[str, ...] = ()
    timing: bool = False
    with_division: bool = False
    dal: DalConfig = Field(default_factory=DalConfig)

    @field_validator("train_size", mode="before")
    @classmethod
    def _train_size_text(cls, value: Any) -> Any:
        return None if value is None else str(value)


def learner_from_flags(kind: str, overrides: dict[str, Any]) -> LinearSpec | CartSpec | NetSpec:
    """
    Build a learner spec from a kind and the flags that apply to it.

    Args:
        kind: linear, cart or rnet
        overrides: Hyperparameter values; keys that do not apply to the kind are ignored

    Returns:
        Validated learner spec
    """
    spec_type: type[LinearSpec] | type[CartSpec] | type[NetSpec]
    match kind:
        case "linear":
            spec_type = LinearSpec
        case "cart":
            spec_type = CartSpec
        case "rnet":
            spec_type = NetSpec
        case _:
            raise UsageError("INVALID_LEARNER", f"Unknown learner '{kind}'", {"learner": kind})

    fields = {k: v for k, v in overrides.items() if k in spec_type.model_fields and v is not None}
    try:
        return spec_type(**fields)
    except ValidationError as e:
        raise UsageError("INVALID_PARAMETER", str(e), {"learner": kind}) from e


def load_run_file(path: Path) -> dict[str, Any]:
    """
    Read a YAML run file of DalConfig defaults.

    Args:
        path: YAML file

    Returns:
        Mapping of DalConfig field names to values
    """
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except (OSError, yaml.YAMLError) as e:
        raise UsageError("INVALID_CONFIG_FILE", f"Cannot read run file {path}: {e}",
                         {"path": str(path)}) from e

    if not isinstance(data, dict):
        raise UsageError("INVALID_CONFIG_FILE", f"Run file {path} must be a mapping",
                         {"path": str(path)})

    unknown = set(data) - set(DalConfig.model_fields)
    if unknown:
        raise UsageError("INVALID_CONFIG_FILE", f"Unknown keys in run file: {sorted(unknown)}",
                         {"path": str(path), "keys": sorted(unknown)})

    logger.debug(f"Run file {path}: {data}")
    return dict(data)
