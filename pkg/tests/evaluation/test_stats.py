"""Tests for the effect size and the Scott-Knott ranking."""

import numpy as np
import pytest

from src.errors import DataError
from src.evaluation import a12, best_cut, scott_knott, summarize


def test_a12():
    """Test identical, ordered and interleaved samples."""
    assert a12([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 0.5
    assert a12([1.0, 2.0], [3.0, 4.0]) == 1.0
    assert a12([1.0, 3.0], [2.0, 4.0]) == 0.75


def test_a12_complements_without_ties():
    """Test that swapping the samples complements the effect size."""
    rng = np.random.default_rng(12)
    a = rng.normal(0.0, 1.0, 15)
    b = rng.normal(0.5, 1.0, 11)

    assert a12(a, b) + a12(b, a) == pytest.approx(1.0)


def test_identical_treatments_share_rank():
    """Test that equal distributions are not split."""
    ranking = scott_knott({"A": [1.0] * 5, "B": [1.0] * 5})

    assert ranking.rank_of("A") == 1
    assert ranking.rank_of("B") == 1
    assert len(ranking.groups) == 1


def test_separated_treatments():
    """Test that a large gap gives two ranks."""
    ranking = scott_knott({"A": [1.0, 1.1, 0.9, 1.0, 1.0], "B": [10.0, 10.2, 9.8, 10.0, 10.0]})

    assert ranking.rank_of("A") == 1
    assert ranking.rank_of("B") == 2


def test_similar_pair_below_outlier():
    """Test that two close treatments share rank 1 above a far worse one."""
    ranking = scott_knott(
        {
            "C": [10.0, 10.5, 9.5, 10.2, 9.8],
            "A": [1.0, 1.1, 0.9, 1.0, 1.0],
            "B": [1.05, 0.95, 1.0, 1.1, 0.9],
        }
    )

    assert [set(g.treatments) for g in ranking.groups] == [{"A", "B"}, {"C"}]


def test_ranking_ignores_name_order():
    """Test that the input order of treatments does not change ranks."""
    rng = np.random.default_rng(3)
    treatments = {name: rng.normal(loc, 1.0, 10).tolist() for name, loc in zip("PQRS", [1.0, 1.2, 6.0, 12.0])}

    forward = scott_knott(treatments, seed=4)
    backward = scott_knott(dict(reversed(list(treatments.items()))), seed=4)

    assert forward.to_dict() == backward.to_dict()


def test_ranks_follow_means():
    """Test that every mean in rank r is at most every mean in rank r+1, across seeds."""
    for seed in range(100):
        rng = np.random.default_rng(seed)
        treatments = {f"t{i}": rng.normal(rng.uniform(0, 10), 1.0, 8).tolist() for i in range(4)}

        ranking = scott_knott(treatments, boot_iters=200, seed=seed)

        names = sorted(name for group in ranking.groups for name in group.treatments)
        assert names == sorted(treatments)
        for upper, lower in zip(ranking.groups, ranking.groups[1:]):
            assert max(np.mean(treatments[n]) for n in upper.treatments) <= min(
                np.mean(treatments[n]) for n in lower.treatments
            )


def test_best_cut_is_exhaustive_max():
    """Test the chosen cut against every cut of the sorted list."""
    rng = np.random.default_rng(21)
    items = sorted(
        ((f"t{i}", rng.normal(rng.uniform(0, 5), 1.0, 6)) for i in range(6)),
        key=lambda item: float(item[1].mean()),
    )
    pooled = np.concatenate([v for _, v in items])

    def delta(i: int) -> float:
        left = np.concatenate([v for _, v in items[:i]])
        right = np.concatenate([v for _, v in items[i:]])
        return (left.size / pooled.size) * (left.mean() - pooled.mean()) ** 2 + (
            right.size / pooled.size
        ) * (right.mean() - pooled.mean()) ** 2

    cut, best = best_cut(items)

    assert best == pytest.approx(max(delta(i) for i in range(1, len(items))))
    assert best == pytest.approx(delta(cut))


def test_ranking_to_dict():
    """Test the serialized ranking."""
    data = scott_knott({"A": [1.0, 2.0], "B": [1.5, 2.5]}, boot_iters=50).to_dict()

    assert data["parameters"] == {"conf": 0.99, "a12_min": 0.6, "boot_iters": 50}
    assert data["treatments"]["A"]["rank"] == 1
    assert data["treatments"]["A"]["mean"] == 1.5


def test_too_few_observations():
    """Test that one observation per treatment is rejected."""
    with pytest.raises(DataError) as exc_info:
        scott_knott({"A": [1.0]})

    assert exc_info.value.code == "TOO_FEW_OBSERVATIONS"


def test_summarize():
    """Test mean, median and interquartile range."""
    assert summarize([1.0, 2.0, 3.0, 4.0, 5.0]) == {"mean": 3.0, "median": 3.0, "iqr": 2.0}


def test_sanity_over_seeds():
    """Test identical samples never split and a tenfold gap always does, over 100 seeds."""
    for seed in range(100):
        rng = np.random.default_rng(seed)
        same = rng.normal(5.0, 1.0, 10).tolist()
        low = (1.0 + 0.01 * rng.normal(size=10)).tolist()
        high = (10.0 + 0.1 * rng.normal(size=10)).tolist()

        shared = scott_knott({"A": same, "B": list(same)}, boot_iters=200, seed=seed)
        split = scott_knott({"B": high, "A": low}, boot_iters=200, seed=seed)

        assert shared.rank_of("A") == shared.rank_of("B") == 1
        assert split.rank_of("A") == 1
        assert split.rank_of("B") == 2
