"""Divide-and-learn models, the global baseline and model files."""

from .model import (
    FRAMEWORKS,
    DalModel,
    GlobalModel,
    ModelRecipe,
    TrainedModel,
    default_recipes,
    framework_name,
    merge_min_size,
    predict_dal,
    predict_many,
    train_dal,
    train_global,
)
from .serializer import MODEL_FORMAT, dump_json, load_model, model_from_dict, model_to_dict, save_model

__all__ = [
    "FRAMEWORKS",
    "MODEL_FORMAT",
    "DalModel",
    "GlobalModel",
    "ModelRecipe",
    "TrainedModel",
    "default_recipes",
    "dump_json",
    "framework_name",
    "load_model",
    "merge_min_size",
    "model_from_dict",
    "model_to_dict",
    "predict_dal",
    "predict_many",
    "save_model",
    "train_dal",
    "train_global",
]
