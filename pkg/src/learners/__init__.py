"""Local regressors trained per division."""

from .linear import LinearModel, fit_linear
from .local import ConstantModel, LocalModel, fit_local, local_from_dict, predict_local
from .net import NetModel, fit_net, grad_check, init_net, train_net
from .spec import (
    LEARNER_KINDS,
    CartSpec,
    LinearSpec,
    LocalLearnerSpec,
    NetSpec,
    default_spec,
    learner_min_samples,
)
from .tree import TreeRegressor, fit_tree_regressor

__all__ = [
    "LEARNER_KINDS",
    "CartSpec",
    "ConstantModel",
    "LinearModel",
    "LinearSpec",
    "LocalLearnerSpec",
    "LocalModel",
    "NetModel",
    "NetSpec",
    "TreeRegressor",
    "default_spec",
    "fit_linear",
    "fit_local",
    "fit_net",
    "fit_tree_regressor",
    "grad_check",
    "init_net",
    "learner_min_samples",
    "local_from_dict",
    "predict_local",
    "train_net",
]
