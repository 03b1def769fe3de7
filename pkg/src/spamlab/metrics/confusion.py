from typing import Sequence, Union

import numpy as np

from ..records.evaluation import ClassMetrics, ConfusionMatrix
from ..utils.const import HAM, SPAM
from ..utils.errors import EmptyInputError, LengthMismatchError

__all__ = ["as_binary", "confusion", "class_metrics", "ratio"]


def as_binary(labels: Union[Sequence, np.ndarray]) -> np.ndarray:
    """1 = spam, 0 = ham; accepts "spam"/"ham" strings, booleans or 0/1."""
    labels = np.asarray(labels).ravel()
    if labels.dtype.kind in "USO":
        lowered = np.char.lower(labels.astype(str))
        bad = ~np.isin(lowered, (HAM, SPAM))
        if bad.any():
            raise ValueError(f"Unknown label: {labels[bad][0]!r}")
        return (lowered == SPAM).astype(np.int64)
    return (labels > 0).astype(np.int64)


def confusion(y_true, y_pred) -> ConfusionMatrix:
    truth, pred = as_binary(y_true), as_binary(y_pred)
    if truth.shape[0] != pred.shape[0]:
        raise LengthMismatchError(
            f"{truth.shape[0]} true labels but {pred.shape[0]} predictions"
        )
    if truth.shape[0] == 0:
        raise EmptyInputError("Cannot build a confusion matrix from zero samples")

    return ConfusionMatrix(
        tp=int(np.sum((truth == 1) & (pred == 1))),
        fp=int(np.sum((truth == 0) & (pred == 1))),
        fn=int(np.sum((truth == 1) & (pred == 0))),
        tn=int(np.sum((truth == 0) & (pred == 0))),
    )


def ratio(num: float, den: float) -> float:
    # 0/0 reads as 0.0
    return num / den if den > 0 else 0.0


def class_metrics(cm: ConfusionMatrix, positive: str = SPAM) -> ClassMetrics:
    """Precision, recall and F1 of the `positive` class plus overall accuracy."""
    if positive not in (HAM, SPAM):
        raise ValueError(f"Unknown class: {positive}")
    if cm.total == 0:
        raise EmptyInputError("Confusion matrix is empty")
    if positive == HAM:
        cm = cm.swapped()

    precision = ratio(cm.tp, cm.tp + cm.fp)
    recall = ratio(cm.tp, cm.tp + cm.fn)
    return ClassMetrics(
        precision=precision,
        recall=recall,
        f1=ratio(2.0 * precision * recall, precision + recall),
        accuracy=(cm.tp + cm.tn) / cm.total,
    )
