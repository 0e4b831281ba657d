"""Accuracy metrics, bootstrap evaluation and statistical ranking."""

from .harness import EvalReport, RunResult, compare, evaluate
from .metrics import MreResult, mre, rmse
from .report import ReportRenderer, render_report
from .stats import SkGroup, SkRanking, a12, best_cut, scott_knott, summarize

__all__ = [
    "EvalReport",
    "MreResult",
    "ReportRenderer",
    "RunResult",
    "SkGroup",
    "SkRanking",
    "a12",
    "best_cut",
    "compare",
    "evaluate",
    "mre",
    "render_report",
    "rmse",
    "scott_knott",
    "summarize",
]
