"""Tests for bootstrap evaluation, comparison and report rendering."""

import orjson
import pytest

from src.config import DalConfig, RfParams
from src.dataset import OptionKind
from src.errors import DataError
from src.evaluation import compare, evaluate, render_report
from src.framework import ModelRecipe
from src.learners import LinearSpec
from tests.conftest import make_dataset

LINEAR = DalConfig(learner=LinearSpec(), rf=RfParams(n_trees=20))


def test_perfect_data_has_zero_error():
    """Test a linear learner on an exactly linear system."""
    x = [float(v) for v in range(1, 21)]
    data = make_dataset({"x": (OptionKind.NUMERIC, x)}, [2.0 * v + 3.0 for v in x])

    report = evaluate(ModelRecipe.parse("global:linear", LINEAR), data, train_size=10, runs=5, seed=1)

    assert all(value == pytest.approx(0.0, abs=1e-6) for value in report.mres)


def test_thirty_runs_reproducible(step_dataset):
    """Test the default run count and seed reproducibility."""
    recipe = ModelRecipe.parse("global:linear", LINEAR)

    first = evaluate(recipe, step_dataset, train_size=12, seed=7)
    second = evaluate(recipe, step_dataset, train_size=12, seed=7)

    assert len(first.runs) == 30
    assert [r.run for r in first.runs] == list(range(30))
    assert first.to_dict() == second.to_dict()


def test_recipes_share_splits(mongodb_dataset):
    """Test that two recipes see the same split per run."""
    reports, _ = compare(
        [ModelRecipe.parse("dal:linear", LINEAR), ModelRecipe.parse("global:cart", LINEAR)],
        mongodb_dataset,
        train_size=20,
        runs=4,
        seed=3,
    )

    assert [r.split_seed for r in reports[0].runs] == [r.split_seed for r in reports[1].runs]


def test_jobs_do_not_change_results(mongodb_dataset):
    """Test byte-identical reports for 1 and 8 workers."""
    recipe = ModelRecipe.parse("dal:linear", LINEAR)

    serial = render_report(evaluate(recipe, mongodb_dataset, train_size=24, runs=6, seed=2, jobs=1))
    parallel = render_report(evaluate(recipe, mongodb_dataset, train_size=24, runs=6, seed=2, jobs=8))

    assert serial == parallel


def test_divided_linear_beats_global_on_bimodal_data(bimodal_dataset):
    """Test that dividing on the mode option wins in at least 27 of 30 paired runs."""
    base = DalConfig(learner=LinearSpec(), rf=RfParams(n_trees=20))
    reports, ranking = compare(
        [ModelRecipe.parse("dal:linear", base), ModelRecipe.parse("global:linear", base)],
        bimodal_dataset,
        train_size=30,
        runs=30,
        seed=0,
    )

    divided, undivided = reports
    wins = sum(d.mre < g.mre for d, g in zip(divided.runs, undivided.runs, strict=True))
    assert wins >= 27
    assert ranking.rank_of("dal:linear") == 1


def test_invalid_train_size(step_dataset):
    """Test train_size outside [1, rows - 1]."""
    with pytest.raises(DataError) as exc_info:
        evaluate(ModelRecipe.parse("global:linear", LINEAR), step_dataset, train_size=20, runs=2)

    assert exc_info.value.code == "INVALID_TRAIN_SIZE"


def test_invalid_runs(step_dataset):
    """Test that zero runs is rejected."""
    with pytest.raises(DataError) as exc_info:
        evaluate(ModelRecipe.parse("global:linear", LINEAR), step_dataset, train_size=10, runs=0)

    assert exc_info.value.code == "INVALID_RUNS"


def test_duplicate_recipes_rejected(step_dataset):
    """Test that compare needs distinct recipe names."""
    recipe = ModelRecipe.parse("global:linear", LINEAR)

    with pytest.raises(DataError) as exc_info:
        compare([recipe, recipe], step_dataset, train_size=10, runs=2)

    assert exc_info.value.code == "DUPLICATE_RECIPE"


def test_json_report_timing(step_dataset):
    """Test that run times appear only when asked for."""
    report = evaluate(ModelRecipe.parse("global:linear", LINEAR), step_dataset, train_size=10, runs=3)

    plain = orjson.loads(render_report(report))
    timed = orjson.loads(render_report(report, timing=True))

    assert "seconds" not in plain["runs"][0]
    assert timed["runs"][0]["seconds"] >= 0.0
    assert len(plain["mre"]) == 3


def test_table_reports(step_dataset):
    """Test the plain-text evaluation and ranking tables."""
    recipes = [ModelRecipe.parse("global:linear", LINEAR), ModelRecipe.parse("global:cart", LINEAR)]
    reports, ranking = compare(recipes, step_dataset, train_size=10, runs=3, seed=1)

    evaluation = render_report(reports[0], "table")
    comparison = render_report((reports, ranking), "table")

    assert evaluation.splitlines()[0].split() == ["treatment", "runs", "mean", "median", "iqr"]
    assert "global:linear" in evaluation
    assert evaluation.rstrip().endswith("train_size=10 runs=3 seed=1")
    assert "global:cart" in comparison
    assert "conf=0.99 a12_min=0.6 boot_iters=1000" in comparison
