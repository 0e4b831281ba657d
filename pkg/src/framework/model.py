"""
Divide-and-Learn Model.

Training divides the samples with the CART, adapts the division depth,
trains one isolated local model per division and fits the classifier that
routes new configurations to a division. The dal-kmeans, dal-agglomerative
and dal-dbscan frameworks divide with a clusterer instead of the CART. A
global baseline trains the same learner on all rows at once.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np
from joblib import Parallel, delayed

from ..assignment import PseudoLabeledSet, RfClassifier, classify, fit_rf, smote_oversample
from ..config import DalConfig
from ..dataset import Configuration, Dataset
from ..depth import DepthCandidate, adapt_depth
from ..divider import (
    CartTree,
    Division,
    cluster_labels,
    division_membership,
    divisions_from_labels,
    extract_divisions,
    fit_cart,
    merge_small_divisions,
)
from ..encoding import Encoder, fit_encoder
from ..errors import UsageError
from ..learners import LocalModel, default_spec, fit_local, learner_min_samples, predict_local
from ..seeding import derive_seed

logger = logging.getLogger(__name__)

Framework = Literal["dal", "dal-hv", "dal-kmeans", "dal-agglomerative", "dal-dbscan", "global"]
FRAMEWORKS: tuple[str, ...] = ("dal", "dal-hv", "dal-kmeans", "dal-agglomerative", "dal-dbscan", "global")
CLUSTER_FRAMEWORKS: tuple[str, ...] = ("dal-kmeans", "dal-agglomerative", "dal-dbscan")

DEFAULT_MERGE_MIN_SIZE = 4


def _provenance(train: Dataset, cfg: DalConfig, seed: int, framework: str) -> dict[str, Any]:
    return {
        "framework": framework,
        "seed": seed,
        "config": cfg.model_dump(mode="json"),
        "dataset_fingerprint": train.fingerprint(),
        "rows": len(train),
        "option_names": list(train.option_names),
        "performance_name": train.performance_name,
    }


@dataclass(frozen=True)
class DalModel:
    """Trained divide-and-learn model."""

    encoder: Encoder
    tree: CartTree
    depth_used: int | None
    degenerate: bool
    divisions: tuple[Division, ...]
    local_models: dict[int, LocalModel]
    classifier: RfClassifier | None
    candidates: tuple[DepthCandidate, ...] = ()
    provenance: dict[str, Any] = field(default_factory=dict)

    @property
    def framework(self) -> str:
        return str(self.provenance.get("framework", "dal"))

    def route(self, config: Configuration, issues: list[str] | None = None) -> tuple[int, float]:
        """Division id and prediction for one configuration."""
        x = self.encoder.encode(config, issues)
        if self.classifier is None:
            division_id = self.divisions[0].id
        else:
            division_id = classify(self.classifier, x)
        return division_id, predict_local(self.local_models[division_id], x)

    def predict(self, config: Configuration) -> float:
        return self.route(config)[1]

    def predict_many(
        self, configs: Sequence[Configuration], issues: list[str] | None = None
    ) -> tuple[np.ndarray, np.ndarray]:
        """Predictions and division ids for a batch of configurations."""
        routed = [self.route(config, issues) for config in configs]
        divisions = np.array([r[0] for r in routed], dtype=np.int64)
        predictions = np.array([r[1] for r in routed], dtype=float)
        return predictions, divisions


@dataclass(frozen=True)
class GlobalModel:
    """One local learner trained on every training row."""

    encoder: Encoder
    local_model: LocalModel
    provenance: dict[str, Any] = field(default_factory=dict)

    framework = "global"

    def route(self, config: Configuration, issues: list[str] | None = None) -> tuple[int, float]:
        return 0, predict_local(self.local_model, self.encoder.encode(config, issues))

    def predict(self, config: Configuration) -> float:
        return self.route(config)[1]

    def predict_many(
        self, configs: Sequence[Configuration], issues: list[str] | None = None
    ) -> tuple[np.ndarray, np.ndarray]:
        X = self.encoder.encode_many(configs, issues)
        return self.local_model.predict(X), np.zeros(len(configs), dtype=np.int64)


TrainedModel = DalModel | GlobalModel


def merge_min_size(cfg: DalConfig, width: int) -> int:
    """Explicit merge size, else max(4, the learner's minimum)."""
    if cfg.merge.min_size is not None:
        return cfg.merge.min_size
    return max(DEFAULT_MERGE_MIN_SIZE, learner_min_samples(cfg.learner, width))


def framework_name(cfg: DalConfig) -> str:
    """Recipe framework that trains with this config."""
    if cfg.divider != "cart":
        return f"dal-{cfg.divider}"
    return "dal-hv" if cfg.indicator == "hv" else "dal"


def _cart_divisions(
    tree: CartTree, cfg: DalConfig, width: int
) -> tuple[int, list[DepthCandidate], list[Division]]:
    """Depth (adapted or forced), its candidates and the merged divisions at it."""
    candidates: list[DepthCandidate] = []
    if cfg.depth is None:
        depth, candidates = adapt_depth(tree, cfg.indicator, cfg.jobs)
        assert depth is not None
    else:
        depth = min(cfg.depth, tree.depth)
        if depth != cfg.depth:
            logger.warning(f"Forced depth {cfg.depth} exceeds tree depth {tree.depth}; using {depth}")

    divisions = merge_small_divisions(extract_divisions(tree, depth), tree, merge_min_size(cfg, width))
    logger.info(f"Depth {depth}: {len(divisions)} divisions, sizes {[d.n for d in divisions]}")
    return depth, candidates, divisions


def _clustered_divisions(
    X: np.ndarray, y: np.ndarray, cfg: DalConfig, n_clusters: int, seed: int
) -> list[Division]:
    """Divisions from the configured clusterer."""
    labels = cluster_labels(
        X,
        y,
        cfg.divider,  # type: ignore[arg-type]
        n_clusters,
        derive_seed(seed, "clusters"),
        eps=cfg.cluster.eps,
        min_samples=cfg.cluster.min_samples,
    )
    divisions = divisions_from_labels(labels, y)
    logger.info(f"{cfg.divider}: {len(divisions)} divisions, sizes {[d.n for d in divisions]}")
    return divisions


def train_dal(train: Dataset, cfg: DalConfig, seed: int) -> DalModel:
    """
    Train a divide-and-learn model.

    Args:
        train: Training dataset
        cfg: Scheme, learner, divider, depth mode and stage parameters
        seed: Master seed for local learners, clustering, SMOTE and the forest

    Returns:
        DalModel. A single-leaf dividing tree, or a clusterer that finds one
        group, gives a degenerate model with one local model and no classifier.
    """
    logger.info(f"Training DaL: {len(train)} rows, scheme={cfg.scheme.value}, "
                f"learner={cfg.learner.kind}, divider={cfg.divider}, depth={cfg.depth or 'auto'}")

    encoder = fit_encoder(train, cfg.scheme)
    X = encoder.encode_many(train.configurations)
    y = np.asarray(train.performances, dtype=float)
    tree = fit_cart(train, encoder, cfg.cart)
    provenance = _provenance(train, cfg, seed, framework_name(cfg))

    if tree.depth == 0:
        logger.warning("Dividing tree has a single leaf; training one global local model")
        division = Division.from_node(0, tree.root)
        local = fit_local(cfg.learner, X, y, derive_seed(seed, "division", 0))
        return DalModel(encoder, tree, None, True, (division,), {0: local}, None, (), provenance)

    depth: int | None
    if cfg.divider == "cart":
        depth, candidates, divisions = _cart_divisions(tree, cfg, encoder.output_width)
    else:
        # without a set count, cluster into as many groups as the CART divides into
        n_clusters = cfg.cluster.n_clusters or len(_cart_divisions(tree, cfg, encoder.output_width)[2])
        divisions = _clustered_divisions(X, y, cfg, n_clusters, seed)
        depth, candidates = None, []

    fitted = Parallel(n_jobs=cfg.jobs, prefer="threads")(
        delayed(fit_local)(
            cfg.learner,
            X[list(div.sample_indices)],
            y[list(div.sample_indices)],
            derive_seed(seed, "division", div.id),
        )
        for div in divisions
    )
    local_models = {div.id: model for div, model in zip(divisions, fitted, strict=True)}

    if cfg.divider != "cart" and len(divisions) == 1:
        logger.warning(f"{cfg.divider} found a single division; no classifier is trained")
        return DalModel(encoder, tree, depth, True, tuple(divisions), local_models, None, (), provenance)

    labelled = PseudoLabeledSet(X=X, labels=division_membership(divisions, len(train)))
    balanced = smote_oversample(labelled, cfg.smote.k, derive_seed(seed, "smote"))
    classifier = fit_rf(balanced, cfg.rf, derive_seed(seed, "forest"), cfg.jobs)

    return DalModel(
        encoder=encoder,
        tree=tree,
        depth_used=depth,
        degenerate=False,
        divisions=tuple(divisions),
        local_models=local_models,
        classifier=classifier,
        candidates=tuple(candidates),
        provenance=provenance,
    )


def train_global(train: Dataset, cfg: DalConfig, seed: int) -> GlobalModel:
    """Train the configured learner on all rows without dividing."""
    encoder = fit_encoder(train, cfg.scheme)
    X = encoder.encode_many(train.configurations)
    local = fit_local(cfg.learner, X, train.performances, derive_seed(seed, "division", 0))
    logger.info(f"Global {cfg.learner.kind} model trained on {len(train)} rows")
    return GlobalModel(encoder, local, _provenance(train, cfg, seed, "global"))


def predict_dal(model: TrainedModel, config: Configuration) -> float:
    """
    Predict the performance of one configuration.

    Raises:
        DataError: If the configuration does not match the training schema
    """
    return model.predict(config)


def predict_many(
    model: TrainedModel, configs: Sequence[Configuration], issues: list[str] | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Predictions and routed division ids for many configurations."""
    return model.predict_many(configs, issues)


@dataclass(frozen=True)
class ModelRecipe:
    """A named way of training a model, compared across evaluation runs."""

    name: str
    framework: Framework
    config: DalConfig

    def train(self, train: Dataset, seed: int) -> TrainedModel:
        if self.framework == "global":
            return train_global(train, self.config, seed)
        return train_dal(train, self.config, seed)

    @classmethod
    def parse(cls, text: str, base: DalConfig) -> "ModelRecipe":
        """
        Parse 'framework:learner[@n]', e.g. 'dal:linear', 'global:rnet', 'dal:cart@2'.

        Learner and depth replace those of the base config; when the learner
        kind matches the base learner, its hyperparameters are kept. For
        dal-kmeans and dal-agglomerative, n is the cluster count instead of
        the depth; dal-dbscan takes no n.
        """
        framework, _, rest = text.partition(":")
        learner, _, suffix = rest.partition("@")
        if framework not in FRAMEWORKS or not learner:
            raise UsageError("INVALID_RECIPE",
                             f"Recipe must be framework:learner[@n] with framework in "
                             f"{list(FRAMEWORKS)}, got '{text}'", {"recipe": text})
        try:
            spec = base.learner if base.learner.kind == learner else default_spec(learner)
        except ValueError as e:
            raise UsageError("INVALID_RECIPE", str(e), {"recipe": text}) from e

        divider = framework.removeprefix("dal-") if framework in CLUSTER_FRAMEWORKS else "cart"
        updates: dict[str, Any] = {
            "learner": spec,
            "indicator": "hv" if framework == "dal-hv" else "mu_hv",
            "divider": divider,
        }
        if suffix:
            if not suffix.isdigit() or int(suffix) < 1 or framework == "dal-dbscan":
                raise UsageError("INVALID_RECIPE", f"Recipe suffix must be a positive integer, got '{suffix}'",
                                 {"recipe": text})
            if divider == "cart":
                updates["depth"] = int(suffix)
            else:
                updates["cluster"] = base.cluster.model_copy(update={"n_clusters": int(suffix)})
        return cls(name=text, framework=framework, config=base.model_copy(update=updates))  # type: ignore[arg-type]


def default_recipes(base: DalConfig) -> list[ModelRecipe]:
    """DaL against the global model, both with the configured learner."""
    kind = base.learner.kind
    return [ModelRecipe.parse(f"dal:{kind}", base), ModelRecipe.parse(f"global:{kind}", base)]
