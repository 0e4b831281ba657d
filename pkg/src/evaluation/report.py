"""
Report Renderer.

Renders evaluation reports and Scott-Knott rankings as JSON or as aligned
plain-text tables.
"""

import logging
from pathlib import Path
from typing import Any, Literal

from jinja2 import Environment, FileSystemLoader

from ..framework import dump_json
from .harness import EvalReport
from .stats import SkRanking

logger = logging.getLogger(__name__)

ReportFormat = Literal["json", "table"]


def _format_number(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.4f}"


class ReportRenderer:
    """Renders reports through the templates in templates/report."""

    def __init__(self, timing: bool = False):
        """
        Initialize report renderer.

        Args:
            timing: Include per-run training time in JSON reports
        """
        self.timing = timing

        # Load templates
        template_dir = Path(__file__).parent.parent.parent / "templates"
        self.env = Environment(loader=FileSystemLoader(str(template_dir)), keep_trailing_newline=True)

    def to_payload(self, subject: EvalReport | SkRanking | tuple[list[EvalReport], SkRanking]) -> dict[str, Any]:
        """JSON-ready payload for a report, a ranking or a comparison."""
        if isinstance(subject, EvalReport):
            return subject.to_dict(self.timing)
        if isinstance(subject, SkRanking):
            return subject.to_dict()
        reports, ranking = subject
        return {
            "ranking": ranking.to_dict(),
            "reports": [report.to_dict(self.timing) for report in reports],
        }

    def render(
        self,
        subject: EvalReport | SkRanking | tuple[list[EvalReport], SkRanking],
        fmt: ReportFormat = "json",
    ) -> str:
        if fmt == "json":
            return dump_json(self.to_payload(subject)).decode("utf-8")
        if isinstance(subject, EvalReport):
            return self._evaluation_table(subject)
        ranking = subject if isinstance(subject, SkRanking) else subject[1]
        return self._ranking_table(ranking)

    def _evaluation_table(self, report: EvalReport) -> str:
        summary = report.summary()
        cells = [
            ["treatment", "runs", "mean", "median", "iqr"],
            [
                report.recipe,
                str(len(report.mres)),
                _format_number(summary.get("mean")),
                _format_number(summary.get("median")),
                _format_number(summary.get("iqr")),
            ],
        ]
        header, *rows = self._align(cells)
        template = self.env.get_template("report/evaluation.txt.jinja2")
        return template.render(
            header=header,
            rule="-" * len(header),
            rows=rows,
            train_size=report.train_size,
            runs=len(report.runs),
            seed=report.seed,
        )

    def _ranking_table(self, ranking: SkRanking) -> str:
        cells = [["treatment", "rank", "mean", "median", "iqr"]]
        for group in ranking.groups:
            for name in group.treatments:
                stats = ranking.stats[name]
                cells.append(
                    [
                        name,
                        str(group.rank),
                        _format_number(stats["mean"]),
                        _format_number(stats["median"]),
                        _format_number(stats["iqr"]),
                    ]
                )
        header, *rows = self._align(cells)
        template = self.env.get_template("report/ranking.txt.jinja2")
        return template.render(
            header=header,
            rule="-" * len(header),
            rows=rows,
            conf=ranking.conf,
            a12_min=ranking.a12_min,
            boot_iters=ranking.boot_iters,
        )

    @staticmethod
    def _align(cells: list[list[str]]) -> list[str]:
        """Pad columns: first left-aligned, the rest right-aligned."""
        widths = [max(len(row[i]) for row in cells) for i in range(len(cells[0]))]
        lines = []
        for row in cells:
            padded = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:], strict=True)]
            lines.append("  ".join(padded))
        return lines


def render_report(
    subject: EvalReport | SkRanking | tuple[list[EvalReport], SkRanking],
    fmt: ReportFormat = "json",
    timing: bool = False,
) -> str:
    """Render a report, ranking or comparison as JSON or a table."""
    return ReportRenderer(timing=timing).render(subject, fmt)
