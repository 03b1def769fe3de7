from dataclasses import dataclass
from typing import Dict, Tuple

__all__ = ["ConfusionMatrix", "ClassMetrics", "RocCurve"]


@dataclass(frozen=True)
class ConfusionMatrix:
    # positive class = spam
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "fn", "tn"):
            if getattr(self, name) < 0:
                raise ValueError(f"Confusion cell {name} must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def swapped(self) -> "ConfusionMatrix":
        """The same counts seen with ham as the positive class."""
        return ConfusionMatrix(tp=self.tn, fp=self.fn, fn=self.fp, tn=self.tp)

    def scaled(self, factor: int) -> "ConfusionMatrix":
        return ConfusionMatrix(
            tp=self.tp * factor,
            fp=self.fp * factor,
            fn=self.fn * factor,
            tn=self.tn * factor,
        )

    def to_dict(self) -> Dict[str, int]:
        return {"tp": self.tp, "fp": self.fp, "fn": self.fn, "tn": self.tn}


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    accuracy: float

    def to_dict(self) -> Dict[str, float]:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "accuracy": self.accuracy,
        }


@dataclass(frozen=True)
class RocCurve:
    points: Tuple[Tuple[float, float], ...]
    auc: float

    @property
    def fpr(self) -> Tuple[float, ...]:
        return tuple(p[0] for p in self.points)

    @property
    def tpr(self) -> Tuple[float, ...]:
        return tuple(p[1] for p in self.points)
