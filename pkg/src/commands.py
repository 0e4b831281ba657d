"""
Command Implementations for dal-perf.

One function per CLI subcommand:
- dal_train: Train a model and return the model file
- dal_predict: Predict a configurations CSV with a saved model
- dal_evaluate: Bootstrap evaluation report of one recipe
- dal_compare: Scott-Knott ranking of several recipes
- dal_inspect_divisions: Per-depth division objectives and indicators
- dal_encode: Encoded feature matrix of a dataset
"""

import io
import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from .config import RunConfig
from .dataset import Dataset, load_csv, read_configurations, resolve_train_size
from .depth import adapt_depth, candidate_reference
from .divider import fit_cart
from .encoding import Encoder, Scheme, fit_encoder
from .errors import DalError, DataError, UsageError
from .evaluation import compare, evaluate, render_report
from .framework import (
    ModelRecipe,
    default_recipes,
    dump_json,
    framework_name,
    load_model,
    model_to_dict,
    train_dal,
)

logger = logging.getLogger(__name__)


def _require(value: Any, flag: str, command: str) -> Any:
    if value is None:
        raise UsageError("MISSING_ARGUMENT", f"{command} requires {flag}", {"flag": flag})
    return value


def _load(run: RunConfig) -> Dataset:
    return load_csv(_require(run.data, "--data", run.command), run.kinds)


def _recipe(run: RunConfig) -> ModelRecipe:
    """The single recipe a command trains; defaults to DaL with the configured learner."""
    if len(run.recipes) > 1:
        raise UsageError("TOO_MANY_RECIPES", f"{run.command} takes at most one --recipe",
                         {"recipes": list(run.recipes)})
    if run.recipes:
        return ModelRecipe.parse(run.recipes[0], run.dal)
    framework = framework_name(run.dal)
    return ModelRecipe(name=f"{framework}:{run.dal.learner.kind}", framework=framework, config=run.dal)  # type: ignore[arg-type]


def _guarded(code: str) -> Callable[[Callable[[RunConfig], bytes]], Callable[[RunConfig], bytes]]:
    """Re-raise unexpected failures as DalError with a command-level code."""

    def decorate(command: Callable[[RunConfig], bytes]) -> Callable[[RunConfig], bytes]:
        def wrapper(run: RunConfig) -> bytes:
            try:
                return command(run)
            except (DataError, UsageError):
                raise
            except Exception as e:
                logger.error(f"{run.command} failed: {e}")
                raise DalError(code, f"{run.command} failed: {e}", {"error": str(e)}) from e

        wrapper.__name__ = command.__name__
        wrapper.__doc__ = command.__doc__
        return wrapper

    return decorate


@_guarded("TRAIN_FAILED")
def dal_train(run: RunConfig) -> bytes:
    """
    Train a model on a dataset.

    Args:
        run: Needs --data; optional --recipe selects another framework

    Returns:
        Model file JSON
    """
    dataset = _load(run)
    if run.recipes:
        model = _recipe(run).train(dataset, run.seed)
    else:
        model = train_dal(dataset, run.dal, run.seed)
    return dump_json(model_to_dict(model))


@_guarded("PREDICT_FAILED")
def dal_predict(run: RunConfig) -> bytes:
    """
    Predict every configuration of a CSV.

    Args:
        run: Needs --model and --in; --with-division adds the routed division id

    Returns:
        CSV with the option columns and a prediction column
    """
    model = load_model(_require(run.model, "--model", run.command))
    options = [(option.name, option.kind) for option in model.encoder.options]
    performance_name = model.provenance.get("performance_name")
    configs = read_configurations(_require(run.input, "--in", run.command), options, performance_name)

    predictions, divisions = model.predict_many(configs)
    frame = pd.DataFrame([list(c) for c in configs], columns=[name for name, _ in options])
    frame["prediction"] = predictions
    if run.with_division:
        frame["division"] = divisions

    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    logger.info(f"Predicted {len(configs)} configurations")
    return buffer.getvalue().encode("utf-8")


@_guarded("EVALUATE_FAILED")
def dal_evaluate(run: RunConfig) -> bytes:
    """
    Bootstrap evaluation of one recipe.

    Args:
        run: Needs --data and --train-size

    Returns:
        Report as JSON or table
    """
    dataset = _load(run)
    train_size = resolve_train_size(_require(run.train_size, "--train-size", run.command), dataset)
    report = evaluate(_recipe(run), dataset, train_size, run.runs, run.seed, run.dal.jobs)
    return render_report(report, run.format, run.timing).encode("utf-8")


@_guarded("COMPARE_FAILED")
def dal_compare(run: RunConfig) -> bytes:
    """
    Evaluate recipes on paired splits and rank them.

    Args:
        run: Needs --data and --train-size; two or more --recipe flags, or
            none for DaL against the global model

    Returns:
        Ranking as JSON (with per-recipe reports) or table
    """
    dataset = _load(run)
    train_size = resolve_train_size(_require(run.train_size, "--train-size", run.command), dataset)
    if not run.recipes:
        recipes = default_recipes(run.dal)
    elif len(run.recipes) < 2:
        raise UsageError("TOO_FEW_RECIPES", "compare needs at least two --recipe flags",
                         {"recipes": list(run.recipes)})
    else:
        recipes = [ModelRecipe.parse(text, run.dal) for text in run.recipes]

    reports, ranking = compare(recipes, dataset, train_size, run.runs, run.seed, run.dal.jobs)
    return render_report((reports, ranking), run.format, run.timing).encode("utf-8")


@_guarded("INSPECT_FAILED")
def dal_inspect_divisions(run: RunConfig) -> bytes:
    """
    Dump every candidate depth of the dividing tree fitted on the whole dataset.

    Returns:
        JSON with per-depth divisions (id, n, h, z), mu_hv, hv and the reference point
    """
    dataset = _load(run)
    encoder = fit_encoder(dataset, run.dal.scheme)
    tree = fit_cart(dataset, encoder, run.dal.cart)
    selected, candidates = adapt_depth(tree, run.dal.indicator, run.dal.jobs)

    payload: dict[str, Any] = {
        "tree_depth": tree.depth,
        "indicator": run.dal.indicator,
        "selected_depth": selected,
        "reference_point": candidate_reference(candidates).to_dict() if candidates else None,
        "candidates": [c.to_dict() for c in candidates],
    }
    return dump_json(payload)


def encoded_columns(encoder: Encoder) -> list[str]:
    """Column names of an encoded matrix."""
    if encoder.scheme is not Scheme.ONE_HOT:
        return [option.name for option in encoder.options]
    return [f"{option.name}={value}" for option in encoder.options for value in option.categories]


@_guarded("ENCODE_FAILED")
def dal_encode(run: RunConfig) -> bytes:
    """
    Encode a dataset with an encoder fitted on all of it.

    Returns:
        CSV of encoded features followed by the performance column
    """
    dataset = _load(run)
    encoder = fit_encoder(dataset, run.dal.scheme)
    matrix = encoder.encode_many(dataset.configurations)

    frame = pd.DataFrame(matrix, columns=encoded_columns(encoder))
    frame[dataset.performance_name] = np.asarray(dataset.performances)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue().encode("utf-8")


COMMANDS: dict[str, Callable[[RunConfig], bytes]] = {
    "train": dal_train,
    "predict": dal_predict,
    "evaluate": dal_evaluate,
    "compare": dal_compare,
    "inspect-divisions": dal_inspect_divisions,
    "encode": dal_encode,
}


def write_artifact(payload: bytes, out: Path | None) -> None:
    """Write to --out, or stdout when absent."""
    if out is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
        return
    out.write_bytes(payload)
    logger.info(f"Wrote {out}")
