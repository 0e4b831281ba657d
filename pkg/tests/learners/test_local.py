"""Tests for the local learners."""

import numpy as np
import pytest

from src.errors import DataError
from src.learners import (
    CartSpec,
    ConstantModel,
    LinearModel,
    LinearSpec,
    NetSpec,
    TreeRegressor,
    fit_linear,
    fit_local,
    local_from_dict,
    predict_local,
)
from src.learners.net import TUNE_HIDDEN_UNITS, TUNE_L1_LAMBDAS


def test_linear_exact_line():
    """Test slope 2 and intercept 0 on y = 2x."""
    model = fit_linear(np.array([[1.0], [2.0], [3.0]]), np.array([2.0, 4.0, 6.0]))

    assert model.coef[0] == pytest.approx(2.0, abs=1e-9)
    assert model.intercept == pytest.approx(0.0, abs=1e-9)
    assert not model.ridge_used
    assert predict_local(model, np.array([10.0])) == pytest.approx(20.0)


def test_linear_residuals_orthogonal_to_design():
    """Test that least-squares residuals are orthogonal to every column and the intercept."""
    rng = np.random.default_rng(11)
    for _ in range(10):
        X = rng.uniform(0.0, 10.0, (25, 3))
        y = X @ rng.normal(0.0, 3.0, 3) + rng.normal(0.0, 1.0, 25) + 4.0

        model = fit_linear(X, y)
        residual = y - model.predict(X)

        assert not model.ridge_used
        np.testing.assert_allclose(np.column_stack([np.ones(25), X]).T @ residual, 0.0, atol=1e-6)


def test_linear_collinear_columns_match_pseudo_inverse():
    """Test the ridge fallback on duplicated columns against lstsq."""
    rng = np.random.default_rng(3)
    x = rng.uniform(0.0, 5.0, 8)
    X = np.column_stack([x, x])
    y = 3.0 * x + 1.0 + rng.normal(0.0, 0.1, 8)

    model = fit_linear(X, y)
    design = np.column_stack([np.ones(8), X])
    beta = np.linalg.pinv(design) @ y

    assert model.ridge_used
    np.testing.assert_allclose(model.predict(X), design @ beta, atol=1e-6)
    assert model.coef[0] == pytest.approx(model.coef[1])


def test_single_sample_gives_constant():
    """Test the degenerate one-row fit."""
    model = fit_local(LinearSpec(), np.array([[4.0, 1.0]]), np.array([12.5]))

    assert isinstance(model, ConstantModel)
    assert predict_local(model, np.array([0.0, 0.0])) == 12.5
    assert predict_local(model, np.array([99.0, -3.0])) == 12.5


def test_cart_local_predicts_leaf_mean():
    """Test that a training row gets its leaf mean."""
    X = np.array([[0.0], [0.0], [1.0], [1.0]])
    y = np.array([1.0, 3.0, 10.0, 10.0])

    model = fit_local(CartSpec(), X, y)

    assert isinstance(model, TreeRegressor)
    assert predict_local(model, np.array([1.0])) == 10.0
    assert predict_local(model, np.array([0.0])) == 2.0


def test_rnet_huge_penalty_predicts_mean():
    """Test that a dominant L1 penalty leaves only the output bias."""
    rng = np.random.default_rng(8)
    X = rng.uniform(0.0, 1.0, (10, 3))
    y = rng.uniform(10.0, 20.0, 10)
    spec = NetSpec(l1_lambda=1e6, epochs=1000, tune=False)

    model = fit_local(spec, X, y, seed=1)

    assert np.all(model.w1 == 0.0)
    assert np.all(model.w2 == 0.0)
    assert predict_local(model, X[0]) == pytest.approx(float(y.mean()), rel=1e-6)


def test_explicit_penalty_is_not_tuned_away():
    """Test that setting l1_lambda without tune keeps the given penalty."""
    rng = np.random.default_rng(8)
    X = rng.uniform(0.0, 1.0, (10, 3))
    y = rng.uniform(10.0, 20.0, 10)
    spec = NetSpec(l1_lambda=1e6, epochs=1000)

    model = fit_local(spec, X, y, seed=1)

    assert not spec.tune
    assert model.l1_lambda == 1e6
    assert predict_local(model, X[0]) == pytest.approx(float(y.mean()), rel=1e-6)


def test_explicit_tune_wins_over_explicit_shape():
    """Test that tune given alongside hidden_units is respected."""
    assert NetSpec(hidden_units=4, tune=True).tune
    assert NetSpec(hidden_units=4).tune is False
    assert NetSpec(epochs=50).tune


def test_default_spec_tunes_from_grid():
    """Test that the default rnet picks its width and penalty from the grid."""
    rng = np.random.default_rng(2)
    X = rng.uniform(0.0, 1.0, (15, 2))
    y = X @ np.array([4.0, -2.0]) + 3.0

    model = fit_local(NetSpec(epochs=100), X, y, seed=0)

    assert model.hidden_units in TUNE_HIDDEN_UNITS
    assert model.l1_lambda in TUNE_L1_LAMBDAS


def test_rnet_is_deterministic():
    """Test identical predictions for identical spec, seed and data."""
    rng = np.random.default_rng(4)
    X = rng.uniform(0.0, 1.0, (12, 2))
    y = X @ np.array([3.0, -1.0]) + 5.0
    spec = NetSpec(epochs=200, tune=True)

    first = fit_local(spec, X, y, seed=9).predict(X)
    second = fit_local(spec, X, y, seed=9).predict(X)

    assert np.array_equal(first, second)


def test_rnet_learns_a_plane():
    """Test that training reduces the objective on a linear target."""
    rng = np.random.default_rng(6)
    X = rng.uniform(0.0, 1.0, (20, 2))
    y = X @ np.array([2.0, 1.0]) + 1.0

    model = fit_local(NetSpec(epochs=2000, l1_lambda=0.0, learning_rate=0.05, tune=False), X, y, seed=0)

    assert np.sqrt(np.mean((model.predict(X) - y) ** 2)) < 0.3


def test_width_mismatch():
    """Test that a vector of the wrong width is rejected."""
    model = fit_linear(np.array([[1.0], [2.0]]), np.array([1.0, 2.0]))

    with pytest.raises(DataError) as exc_info:
        predict_local(model, np.array([1.0, 2.0]))

    assert exc_info.value.code == "WIDTH_MISMATCH"


def test_length_mismatch():
    """Test that X and y must agree."""
    with pytest.raises(DataError) as exc_info:
        fit_local(LinearSpec(), np.zeros((3, 1)), np.zeros(2))

    assert exc_info.value.code == "LENGTH_MISMATCH"


def test_local_from_dict():
    """Test rebuilding each kind of local model."""
    X = np.array([[0.0], [1.0], [2.0]])
    y = np.array([1.0, 3.0, 5.0])
    models = [
        fit_local(LinearSpec(), X, y),
        fit_local(CartSpec(), X, y),
        fit_local(NetSpec(epochs=10, tune=False), X, y),
        ConstantModel(value=2.0, width=1),
    ]

    for model in models:
        rebuilt = local_from_dict(model.to_dict())
        assert type(rebuilt) is type(model)
        assert np.array_equal(rebuilt.predict(X), model.predict(X))


def test_local_from_dict_unknown_kind():
    """Test that an unknown kind is rejected."""
    with pytest.raises(DataError) as exc_info:
        local_from_dict({"kind": "svm"})

    assert exc_info.value.code == "UNSUPPORTED_MODEL_FORMAT"


def test_linear_model_to_dict():
    """Test the serialized linear model."""
    data = LinearModel(coef=np.array([2.0]), intercept=1.0).to_dict()

    assert data == {"kind": "linear", "coef": [2.0], "intercept": 1.0, "ridge_used": False}
