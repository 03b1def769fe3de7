from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..utils.const import HAM, REPORT_SCHEMA_VERSION, SPAM
from .evaluation import ClassMetrics, ConfusionMatrix, RocCurve

__all__ = ["SUMMARY_COLUMNS", "RunReport", "GridReport"]

SUMMARY_COLUMNS = (
    "Classification Model",
    "Feature Extraction",
    "Precision (N)",
    "Precision (S)",
    "Recall (N)",
    "Recall (S)",
    "F1-score (N)",
    "F1-score (S)",
    "Overall Accuracy",
    "AUC",
)


@dataclass(frozen=True)
class RunReport:
    cell: str
    classifier: str
    features: str
    config: Dict[str, Any]
    seed: int
    status: str = "ok"
    error: Optional[str] = None
    vocabulary_size: int = 0
    train_sizes: Dict[str, int] = field(default_factory=dict)
    test_sizes: Dict[str, int] = field(default_factory=dict)
    metrics: Dict[str, ClassMetrics] = field(default_factory=dict)
    confusion: Optional[ConfusionMatrix] = None
    roc: Optional[RocCurve] = None
    scree: Tuple[Tuple[int, float], ...] = ()
    notes: Tuple[str, ...] = ()
    wall_clock_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    @property
    def accuracy(self) -> Optional[float]:
        return self.metrics[SPAM].accuracy if self.ok else None

    @property
    def auc(self) -> Optional[float]:
        return self.roc.auc if self.roc is not None else None

    def summary_row(self, model_name: str, feature_name: str) -> Dict[str, Any]:
        row: Dict[str, Any] = {
            SUMMARY_COLUMNS[0]: model_name,
            SUMMARY_COLUMNS[1]: feature_name,
        }
        if not self.ok:
            for column in SUMMARY_COLUMNS[2:]:
                row[column] = None
            return row

        ham, spam = self.metrics[HAM], self.metrics[SPAM]
        row.update(
            {
                "Precision (N)": ham.precision,
                "Precision (S)": spam.precision,
                "Recall (N)": ham.recall,
                "Recall (S)": spam.recall,
                "F1-score (N)": ham.f1,
                "F1-score (S)": spam.f1,
                "Overall Accuracy": spam.accuracy,
                "AUC": self.auc,
            }
        )
        return row

    def to_dict(self, include_wall_clock: bool = True) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "cell": self.cell,
            "classifier": self.classifier,
            "features": self.features,
            "config": self.config,
            "seed": self.seed,
            "status": self.status,
            "error": self.error,
            "vocabulary_size": self.vocabulary_size,
            "train_sizes": dict(self.train_sizes),
            "test_sizes": dict(self.test_sizes),
            "metrics": {k: v.to_dict() for k, v in sorted(self.metrics.items())},
            "confusion": self.confusion.to_dict() if self.confusion else None,
            "roc": {
                "auc": self.roc.auc,
                "points_file": f"roc_{self.cell}.csv",
                "n_points": len(self.roc.points),
            }
            if self.roc
            else None,
            "scree": [[i, r] for i, r in self.scree],
            "notes": list(self.notes),
        }
        if include_wall_clock:
            out["wall_clock_seconds"] = self.wall_clock_seconds
        return out


@dataclass(frozen=True)
class GridReport:
    cells: Tuple[RunReport, ...]
    model_names: Tuple[str, ...]
    feature_names: Tuple[str, ...]
    scree: Tuple[Tuple[int, float], ...] = ()

    def summary(self) -> List[Dict[str, Any]]:
        """One summary row per cell, recomputed from the cells on every call."""
        return [
            cell.summary_row(model, feature)
            for cell, model, feature in zip(
                self.cells, self.model_names, self.feature_names
            )
        ]

    def cell(self, name: str) -> RunReport:
        for cell in self.cells:
            if cell.cell == name:
                return cell
        raise KeyError(f"No grid cell named {name!r}")

    def to_dict(self, include_wall_clock: bool = True) -> Dict[str, Any]:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "kind": "grid",
            "cells": [c.to_dict(include_wall_clock) for c in self.cells],
            "summary": self.summary(),
            "scree": [[i, r] for i, r in self.scree],
        }
