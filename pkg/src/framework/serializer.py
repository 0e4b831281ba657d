"""
Model file reader and writer.

A trained model is one JSON document tagged with a format version.
"""

import logging
from pathlib import Path
from typing import Any

import orjson

from ..assignment import RfClassifier
from ..depth import DepthCandidate
from ..divider import CartTree, Division, extract_divisions
from ..encoding import Encoder
from ..errors import DataError
from ..learners import local_from_dict
from .model import DalModel, GlobalModel, TrainedModel

logger = logging.getLogger(__name__)

MODEL_FORMAT = "dal-model/1"
JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY


def dump_json(payload: Any) -> bytes:
    """Deterministic JSON bytes, newline terminated."""
    return orjson.dumps(payload, option=JSON_OPTIONS) + b"\n"


def model_to_dict(model: TrainedModel) -> dict[str, Any]:
    """Convert a trained model to the model file document."""
    if isinstance(model, GlobalModel):
        return {
            "format": MODEL_FORMAT,
            "meta": {"framework": "global", "provenance": model.provenance},
            "encoder": model.encoder.to_dict(),
            "tree": None,
            "divisions": [],
            "locals": {"0": model.local_model.to_dict()},
            "forest": None,
        }

    return {
        "format": MODEL_FORMAT,
        "meta": {
            "framework": model.framework,
            "depth_used": model.depth_used,
            "degenerate": model.degenerate,
            "candidates": [{"d": c.d, "mu_hv": c.mu_hv, "hv": c.hv} for c in model.candidates],
            "provenance": model.provenance,
        },
        "encoder": model.encoder.to_dict(),
        "tree": model.tree.to_dict(),
        "divisions": [div.to_dict() for div in model.divisions],
        "locals": {str(k): v.to_dict() for k, v in sorted(model.local_models.items())},
        "forest": None if model.classifier is None else model.classifier.to_dict(),
    }


def model_from_dict(data: dict[str, Any]) -> TrainedModel:
    """Rebuild a trained model from its file document."""
    if data.get("format") != MODEL_FORMAT:
        raise DataError(
            "UNSUPPORTED_MODEL_FORMAT",
            f"Unsupported model format '{data.get('format')}', expected '{MODEL_FORMAT}'",
            {"format": data.get("format")},
        )

    meta = data["meta"]
    encoder = Encoder.from_dict(data["encoder"])
    locals_ = {int(k): local_from_dict(v) for k, v in data["locals"].items()}

    if meta["framework"] == "global":
        return GlobalModel(encoder, locals_[0], meta.get("provenance", {}))

    tree = CartTree.from_dict(data["tree"])
    candidates = tuple(
        DepthCandidate(c["d"], tuple(extract_divisions(tree, c["d"])), c["mu_hv"], c["hv"])
        for c in meta.get("candidates", [])
    )
    return DalModel(
        encoder=encoder,
        tree=tree,
        depth_used=meta["depth_used"],
        degenerate=bool(meta["degenerate"]),
        divisions=tuple(Division.from_dict(d) for d in data["divisions"]),
        local_models=locals_,
        classifier=None if data["forest"] is None else RfClassifier.from_dict(data["forest"]),
        candidates=candidates,
        provenance=meta.get("provenance", {}),
    )


def save_model(model: TrainedModel, path: Path) -> None:
    """Write a model file."""
    path.write_bytes(dump_json(model_to_dict(model)))
    logger.info(f"Model saved: {path}")


def load_model(path: Path) -> TrainedModel:
    """
    Read a model file.

    Raises:
        DataError: If the file is missing, not JSON or of an unknown format
    """
    if not path.exists():
        raise DataError("FILE_NOT_FOUND", f"Model file not found: {path}", {"path": str(path)})
    try:
        data = orjson.loads(path.read_bytes())
    except orjson.JSONDecodeError as e:
        raise DataError("INVALID_MODEL_FILE", f"Model file is not valid JSON: {e}",
                        {"path": str(path)}) from e
    if not isinstance(data, dict):
        raise DataError("INVALID_MODEL_FILE", "Model file must hold a JSON object", {"path": str(path)})

    model = model_from_dict(data)
    logger.info(f"Model loaded: {path} ({model.framework})")
    return model
