import numpy as np

from ..records.evaluation import RocCurve
from ..utils.errors import LengthMismatchError, SingleClassTruthError
from .confusion import as_binary

__all__ = ["roc_auc", "mann_whitney_auc"]


def roc_auc(y_true, scores) -> RocCurve:
    """
    ROC points for thresholds at +inf and every distinct score, descending.
    Tied scores form a single step, so the trapezoid area equals the
    Mann-Whitney statistic with half credit for ties.
    """

    truth = as_binary(y_true)
    scores = np.asarray(scores, dtype=np.float64).ravel()
    if truth.shape[0] != scores.shape[0]:
        raise LengthMismatchError(f"{truth.shape[0]} labels but {scores.shape[0]} scores")

    n_pos = int(truth.sum())
    n_neg = truth.shape[0] - n_pos
    if n_pos == 0 or n_neg == 0:
        raise SingleClassTruthError("ROC needs both spam and ham in the ground truth")

    order = np.argsort(-scores, kind="stable")
    scores, truth = scores[order], truth[order]

    # last index of each run of equal scores
    ends = np.append(np.flatnonzero(scores[1:] != scores[:-1]), scores.shape[0] - 1)
    tps = np.concatenate(([0], np.cumsum(truth)[ends]))
    fps = np.concatenate(([0], ends + 1 - tps[1:]))

    # integer trapezoid sum, divided once
    doubled = int(np.sum((fps[1:] - fps[:-1]) * (tps[1:] + tps[:-1])))
    auc = doubled / (2.0 * n_pos * n_neg)

    points = tuple(zip((fps / n_neg).tolist(), (tps / n_pos).tolist()))
    return RocCurve(points=points, auc=auc)


def mann_whitney_auc(y_true, scores) -> float:
    """Fraction of (spam, ham) pairs ranked correctly, ties counted as half."""
    truth = as_binary(y_true)
    scores = np.asarray(scores, dtype=np.float64).ravel()
    pos, neg = scores[truth == 1], scores[truth == 0]
    if pos.size == 0 or neg.size == 0:
        raise SingleClassTruthError("Pair statistic needs both classes")

    diff = pos[:, None] - neg[None, :]
    doubled = 2 * int(np.sum(diff > 0)) + int(np.sum(diff == 0))
    return doubled / (2.0 * pos.size * neg.size)
