import json
import os
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

import pandas as pd

from ..records import SUMMARY_COLUMNS, GridReport, RunReport
from ..utils.const import (
    CLASSIFIER_NAMES,
    FEATURE_NAMES,
    REPORT_SCHEMA_VERSION,
    ClassifierKind,
    FeatureMethod,
)
from ..utils.errors import ConfigError
from ..utils.loader import write_text

__all__ = [
    "FORMATS",
    "emit_report",
    "render_json",
    "render_csv",
    "render_markdown",
    "render_roc",
    "render_scree",
]

FORMATS = ("json", "csv", "md")
Report = Union[RunReport, GridReport]


def _document(report: Report, include_wall_clock: bool) -> Dict[str, Any]:
    if isinstance(report, GridReport):
        return report.to_dict(include_wall_clock)
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "kind": "run",
        **report.to_dict(include_wall_clock),
        "summary": _summary(report),
    }


def _cells(report: Report) -> Tuple[RunReport, ...]:
    return report.cells if isinstance(report, GridReport) else (report,)


def _summary(report: Report) -> List[Dict[str, Any]]:
    if isinstance(report, GridReport):
        return report.summary()
    kind, method = ClassifierKind(report.classifier), FeatureMethod(report.features)
    return [report.summary_row(CLASSIFIER_NAMES[kind], FEATURE_NAMES[method])]


def render_json(report: Report, include_wall_clock: bool = True) -> str:
    return json.dumps(_document(report, include_wall_clock), sort_keys=True, indent=2) + "\n"


def render_csv(report: Report) -> str:
    frame = pd.DataFrame(_summary(report), columns=list(SUMMARY_COLUMNS))
    return frame.to_csv(index=False, float_format="%.6f", lineterminator="\n")


def _cell_text(value: Any) -> str:
    if value is None:
        return "failed"
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def render_markdown(report: Report) -> str:
    lines = [
        "| " + " | ".join(SUMMARY_COLUMNS) + " |",
        "|" + "|".join("---" for _ in SUMMARY_COLUMNS) + "|",
    ]
    for row in _summary(report):
        lines.append("| " + " | ".join(_cell_text(row[c]) for c in SUMMARY_COLUMNS) + " |")
    return "\n".join(lines) + "\n"


def render_roc(points: Iterable[Tuple[float, float]]) -> str:
    frame = pd.DataFrame(list(points), columns=["fpr", "tpr"])
    return frame.to_csv(index=False, lineterminator="\n")


def render_scree(scree: Sequence[Tuple[int, float]]) -> str:
    frame = pd.DataFrame(list(scree), columns=["component", "ratio"])
    return frame.to_csv(index=False, lineterminator="\n")


def emit_report(
    report: Report,
    formats: Sequence[str] = FORMATS,
    out_dir: str = "reports",
    include_wall_clock: bool = True,
) -> List[str]:
    """
    Write the summary in each requested format (grid.* or run.*) plus the
    per-cell ROC point and confusion files and, when present, scree.csv.
    Returns the written paths in write order.
    """

    unknown = [f for f in formats if f not in FORMATS]
    if unknown:
        raise ConfigError(f"Unknown report format(s): {', '.join(unknown)}")

    stem = "grid" if isinstance(report, GridReport) else "run"
    renderers = {
        "json": lambda: render_json(report, include_wall_clock),
        "csv": lambda: render_csv(report),
        "md": lambda: render_markdown(report),
    }

    written = []
    for fmt in FORMATS:
        if fmt in formats:
            written.append(write_text(os.path.join(out_dir, f"{stem}.{fmt}"), renderers[fmt]()))

    for cell in _cells(report):
        if cell.roc is not None:
            written.append(
                write_text(os.path.join(out_dir, f"roc_{cell.cell}.csv"), render_roc(cell.roc.points))
            )
        if cell.confusion is not None:
            written.append(
                write_text(
                    os.path.join(out_dir, f"confusion_{cell.cell}.json"),
                    json.dumps(cell.confusion.to_dict(), sort_keys=True) + "\n",
                )
            )

    scree = report.scree
    if scree:
        written.append(write_text(os.path.join(out_dir, "scree.csv"), render_scree(scree)))

    return written
