"""
Evaluation Harness.

Repeats bootstrap train/test runs of a model recipe and collects per-run
accuracy. Run seeds depend only on the master seed and the run index, so
different recipes see identical splits.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any

from joblib import Parallel, delayed

from ..dataset import Dataset, bootstrap_split
from ..errors import DalError, DataError
from ..framework import ModelRecipe
from ..seeding import derive_seed
from .metrics import mre, rmse
from .stats import SkRanking, scott_knott, summarize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunResult:
    run: int
    mre: float | None
    rmse: float
    skipped: int
    split_seed: int
    train_seed: int
    seconds: float


@dataclass(frozen=True)
class EvalReport:
    """Per-run results of one recipe."""

    recipe: str
    train_size: int
    seed: int
    runs: tuple[RunResult, ...] = field(default_factory=tuple)

    @property
    def mres(self) -> list[float]:
        """Defined MREs in run order."""
        return [r.mre for r in self.runs if r.mre is not None]

    def summary(self) -> dict[str, float]:
        return summarize(self.mres) if self.mres else {}

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        runs: list[dict[str, Any]] = []
        for r in self.runs:
            entry: dict[str, Any] = {
                "run": r.run,
                "mre": r.mre,
                "rmse": r.rmse,
                "skipped": r.skipped,
                "split_seed": r.split_seed,
                "train_seed": r.train_seed,
            }
            if timing:
                entry["seconds"] = r.seconds
            runs.append(entry)
        return {
            "recipe": self.recipe,
            "train_size": self.train_size,
            "seed": self.seed,
            "runs": runs,
            "mre": [r.mre for r in self.runs],
            "rmse": [r.rmse for r in self.runs],
            "summary": self.summary(),
        }


def _run_once(recipe: ModelRecipe, data: Dataset, train_size: int, seed: int, run: int) -> RunResult:
    split_seed = derive_seed(seed, "split", run)
    train_seed = derive_seed(seed, "train", run)
    try:
        started = time.perf_counter()
        train, test = bootstrap_split(data, train_size, split_seed)
        model = recipe.train(train, train_seed)
        predictions, _ = model.predict_many(test.configurations)
        seconds = time.perf_counter() - started
    except Exception as e:
        logger.error(f"Run {run} of {recipe.name} failed: {e}")
        details = {"run": run, "recipe": recipe.name}
        if isinstance(e, DalError):
            details["cause"] = e.to_dict()["error"]
        error_type = DataError if isinstance(e, DataError) else DalError
        raise error_type("RUN_FAILED", f"Run {run} of {recipe.name} failed: {e}", details) from e

    accuracy = mre(test.performances, predictions)
    return RunResult(
        run=run,
        mre=accuracy.value,
        rmse=rmse(test.performances, predictions),
        skipped=accuracy.skipped,
        split_seed=split_seed,
        train_seed=train_seed,
        seconds=seconds,
    )


def evaluate(
    recipe: ModelRecipe,
    data: Dataset,
    train_size: int,
    runs: int = 30,
    seed: int = 0,
    jobs: int = 1,
) -> EvalReport:
    """
    Bootstrap evaluation of a recipe.

    Args:
        recipe: How to train the model
        data: Full dataset
        train_size: Training rows per run
        runs: Number of runs
        seed: Master seed
        jobs: Runs evaluated concurrently

    Returns:
        EvalReport with runs in index order

    Raises:
        DataError: If runs < 1 or train_size is out of range
        DalError: RUN_FAILED naming the run that failed
    """
    if runs < 1:
        raise DataError("INVALID_RUNS", f"runs must be at least 1, got {runs}", {"runs": runs})
    if not 1 <= train_size < len(data):
        raise DataError(
            "INVALID_TRAIN_SIZE",
            f"train_size must be in [1, {len(data) - 1}], got {train_size}",
            {"train_size": train_size, "rows": len(data)},
        )

    logger.info(f"Evaluating {recipe.name}: {runs} runs, train_size={train_size}, seed={seed}")
    results = Parallel(n_jobs=jobs, prefer="threads")(
        delayed(_run_once)(recipe, data, train_size, seed, r) for r in range(runs)
    )
    report = EvalReport(recipe=recipe.name, train_size=train_size, seed=seed, runs=tuple(results))
    logger.info(f"{recipe.name}: {report.summary()}")
    return report


def compare(
    recipes: list[ModelRecipe],
    data: Dataset,
    train_size: int,
    runs: int = 30,
    seed: int = 0,
    jobs: int = 1,
) -> tuple[list[EvalReport], SkRanking]:
    """
    Evaluate recipes on paired splits and rank them by MRE.

    Returns:
        (reports in recipe order, Scott-Knott ranking)
    """
    names = [r.name for r in recipes]
    if len(set(names)) != len(names):
        raise DataError("DUPLICATE_RECIPE", f"Recipe names must be unique: {names}", {"recipes": names})

    reports = [evaluate(r, data, train_size, runs, seed, jobs) for r in recipes]
    ranking = scott_knott(
        {report.recipe: report.mres for report in reports},
        seed=derive_seed(seed, "scott-knott"),
    )
    return reports, ranking
