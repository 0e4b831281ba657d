"""Tests for depth selection."""

import numpy as np
import pytest

from src.depth import DepthCandidate, adapt_depth, candidate_reference, select_depth
from src.divider import grow_tree


def _candidates(scores: list[float]) -> list[DepthCandidate]:
    return [DepthCandidate(d=d, divisions=(), mu_hv=score) for d, score in enumerate(scores, start=1)]


@pytest.fixture
def two_level_tree(two_level_dataset):
    X = np.array([[c[0]] for c in two_level_dataset.configurations])
    return grow_tree(X, two_level_dataset.performances)


def test_higher_mu_hv_at_shallower_depth():
    """Test 51084.10 at d=1 against 42240.97 at d=2."""
    assert select_depth(_candidates([51084.10, 42240.97])) == 1


def test_peak_in_the_middle():
    """Test the depth with the highest mu_hv of four."""
    assert select_depth(_candidates([56411.36, 118013.45, 54755.69, 33827.60])) == 2


def test_single_candidate():
    """Test that one candidate is selected."""
    assert select_depth(_candidates([7.0])) == 1


def test_tie_prefers_smaller_depth():
    """Test that equal scores pick the shallower depth."""
    assert select_depth(_candidates([3.0, 5.0, 5.0])) == 2


def test_no_candidates():
    """Test that nothing to choose from gives None."""
    assert select_depth([]) is None


def test_adapt_depth_on_two_level_tree(two_level_tree):
    """Test both indicators on the 18-row tree."""
    selected, candidates = adapt_depth(two_level_tree)
    ref = candidate_reference(candidates)

    assert selected == 1
    assert [c.d for c in candidates] == [1, 2]
    assert (ref.h_r, ref.z_r) == pytest.approx((1673.1, -4.5))
    assert candidates[0].mu_hv == pytest.approx(3346.2)
    assert candidates[1].mu_hv == pytest.approx(2509.65)
    assert candidates[0].hv == pytest.approx(6160.05)
    assert candidates[1].hv == pytest.approx(5855.85)
    assert adapt_depth(two_level_tree, indicator="hv")[0] == 1


def test_adapt_depth_single_leaf():
    """Test that a single-leaf tree has no depth to adapt."""
    tree = grow_tree(np.arange(3, dtype=float)[:, None], np.full(3, 2.0))

    assert adapt_depth(tree) == (None, [])


def test_adapt_depth_jobs_do_not_change_result(two_level_tree):
    """Test that worker count leaves the candidates unchanged."""
    _, serial = adapt_depth(two_level_tree, jobs=1)
    _, parallel = adapt_depth(two_level_tree, jobs=4)

    assert [c.to_dict() for c in serial] == [c.to_dict() for c in parallel]


@pytest.mark.parametrize("scale", [0.25, 3.0, 1000.0])
def test_selected_depth_ignores_performance_scale(two_level_dataset, scale):
    """Test that multiplying every performance by c > 0 keeps the chosen depth."""
    X = np.array([[c[0]] for c in two_level_dataset.configurations])
    base, _ = adapt_depth(grow_tree(X, two_level_dataset.performances))

    scaled, _ = adapt_depth(grow_tree(X, two_level_dataset.performances * scale))

    assert scaled == base


def test_selected_depth_ignores_scale_on_random_trees():
    """Test scale invariance of both indicators on random data."""
    rng = np.random.default_rng(12)
    for _ in range(10):
        X = rng.integers(0, 5, size=(30, 2)).astype(float)
        y = rng.uniform(1.0, 100.0, 30)
        for indicator in ("mu_hv", "hv"):
            base, _ = adapt_depth(grow_tree(X, y), indicator)

            assert adapt_depth(grow_tree(X, y * 7.5), indicator)[0] == base
