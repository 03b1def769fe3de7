from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from ..numeric.matrix import FeatureMatrix, as_matrix
from ..utils.const import ClassifierKind
from .base import Model, ModelRegistry, check_labels

__all__ = ["DtModel", "train_dt", "gini", "best_split"]

GINI_TOL = 1e-12
LEAF = -1


def gini(n_ham: float, n_spam: float) -> float:
    n = n_ham + n_spam
    if n == 0:
        return 0.0
    return 1.0 - (n_ham * n_ham + n_spam * n_spam) / (n * n)


def _weighted_child_gini(n_left, spam_left, n_right, spam_right, n):
    """Weighted Gini of both children, computed from integer counts."""
    ham_left = n_left - spam_left
    ham_right = n_right - spam_right
    left = n_left - (spam_left**2 + ham_left**2) / n_left
    right = n_right - (spam_right**2 + ham_right**2) / n_right
    return (left + right) / n


def _scan(values, n_weight, spam_weight, n, n_spam) -> Tuple[float, float]:
    """Best (weighted gini, threshold) over midpoints of one feature's values."""
    order = np.argsort(values, kind="stable")
    values = values[order]
    n_cum = np.cumsum(n_weight[order])
    spam_cum = np.cumsum(spam_weight[order])

    cuts = np.flatnonzero(values[1:] > values[:-1])
    if cuts.size == 0:
        return np.inf, 0.0

    n_left = n_cum[cuts].astype(np.float64)
    spam_left = spam_cum[cuts].astype(np.float64)
    scores = _weighted_child_gini(n_left, spam_left, n - n_left, n_spam - spam_left, n)

    best = int(np.argmin(scores))
    lo, hi = values[cuts[best]], values[cuts[best] + 1]
    threshold = 0.5 * (lo + hi)
    if not lo <= threshold < hi:
        threshold = lo
    return float(scores[best]), float(threshold)


def best_split(X: FeatureMatrix, y: np.ndarray) -> Tuple[int, float, float]:
    """
    (feature, threshold, weighted child gini) minimising the weighted Gini;
    ties go to the lowest feature index, then the lowest threshold.
    Feature -1 means no candidate split exists.
    """

    n = y.shape[0]
    n_spam = int(y.sum())
    best: Tuple[int, float, float] = (LEAF, 0.0, np.inf)

    if sp.issparse(X):
        csc = X.tocsc()
        csc.eliminate_zeros()
        for j in range(csc.shape[1]):
            start, end = csc.indptr[j], csc.indptr[j + 1]
            if start == end:
                continue
            rows = csc.indices[start:end]
            values = csc.data[start:end]
            labels = y[rows]
            zeros = n - (end - start)
            if zeros > 0:
                # all implicit zeros collapse into one weighted entry
                values = np.concatenate(([0.0], values))
                n_weight = np.concatenate(([zeros], np.ones(end - start, dtype=np.int64)))
                spam_weight = np.concatenate(([n_spam - int(labels.sum())], labels))
            else:
                n_weight = np.ones(end - start, dtype=np.int64)
                spam_weight = labels
            score, threshold = _scan(values, n_weight, spam_weight, n, n_spam)
            if score < best[2]:
                best = (j, threshold, score)
        return best

    ones = np.ones(n, dtype=np.int64)
    for j in range(X.shape[1]):
        score, threshold = _scan(X[:, j], ones, y, n, n_spam)
        if score < best[2]:
            best = (j, threshold, score)
    return best


@ModelRegistry.register_model(ClassifierKind.DT)
class DtModel(Model):
    def __init__(
        self,
        n_features: int,
        feature: np.ndarray,
        threshold: np.ndarray,
        left: np.ndarray,
        right: np.ndarray,
        n_ham: np.ndarray,
        n_spam: np.ndarray,
        max_depth: Optional[int] = 20,
        min_samples_split: int = 2,
        require_gain: bool = True,
    ) -> None:
        # flat pre-order node arrays; feature == -1 marks a leaf
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.n_ham = n_ham
        self.n_spam = n_spam
        super().__init__(
            n_features,
            max_depth=max_depth,
            min_samples_split=min_samples_split,
            require_gain=require_gain,
        )

    @property
    def n_nodes(self) -> int:
        return self.feature.shape[0]

    @property
    def n_leaves(self) -> int:
        return int(np.sum(self.feature == LEAF))

    @property
    def spam_fraction(self) -> np.ndarray:
        total = self.n_ham + self.n_spam
        return np.where(total > 0, self.n_spam / np.maximum(total, 1), 0.0)

    def depth(self) -> int:
        depths = np.zeros(self.n_nodes, dtype=np.int64)
        for node in range(self.n_nodes):
            if self.feature[node] != LEAF:
                depths[self.left[node]] = depths[node] + 1
                depths[self.right[node]] = depths[node] + 1
        return int(depths.max(initial=0))

    def apply(self, X: FeatureMatrix) -> np.ndarray:
        """Leaf index reached by every row."""
        node = np.zeros(X.shape[0], dtype=np.int64)
        while True:
            active = np.flatnonzero(self.feature[node] != LEAF)
            if active.size == 0:
                return node
            current = node[active]
            feats = self.feature[current]
            vals = X[active, feats]
            vals = np.asarray(vals).ravel()
            go_left = vals <= self.threshold[current]
            node[active] = np.where(go_left, self.left[current], self.right[current])

    def _score(self, X: FeatureMatrix) -> np.ndarray:
        return self.spam_fraction[self.apply(X)]

    def parameters(self) -> Dict[str, Any]:
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "left": self.left,
            "right": self.right,
            "n_ham": self.n_ham,
            "n_spam": self.n_spam,
        }

    @classmethod
    def from_parameters(cls, n_features, hyperparameters, parameters) -> "DtModel":
        arrays = {
            key: np.asarray(parameters[key], dtype=np.float64 if key == "threshold" else np.int64)
            for key in ("feature", "threshold", "left", "right", "n_ham", "n_spam")
        }
        return cls(n_features, **arrays, **hyperparameters)


@ModelRegistry.register_trainer(ClassifierKind.DT)
def train_dt(
    X: FeatureMatrix,
    y,
    max_depth: Optional[int] = 20,
    min_samples_split: int = 2,
    require_gain: bool = True,
) -> DtModel:
    """
    Greedy CART with Gini impurity. With require_gain a node is split only
    when the best split strictly lowers the weighted Gini; without it a
    zero-gain split of an impure node is still taken (XOR-like layouts).
    """

    X = as_matrix(X)
    y = check_labels(y, X.shape[0], both_classes=False)
    if sp.issparse(X):
        X = X.tocsr()

    nodes: List[List] = []  # [feature, threshold, left, right, n_ham, n_spam]
    stack = [(np.arange(X.shape[0]), 0, None, None)]  # rows, depth, parent, side

    while stack:
        rows, depth, parent, side = stack.pop()
        labels = y[rows]
        n_spam = int(labels.sum())
        n_ham = rows.size - n_spam
        node_id = len(nodes)
        nodes.append([LEAF, 0.0, LEAF, LEAF, n_ham, n_spam])
        if parent is not None:
            nodes[parent][2 if side == "left" else 3] = node_id

        parent_gini = gini(n_ham, n_spam)
        if (
            parent_gini == 0.0
            or rows.size < max(min_samples_split, 2)
            or (max_depth is not None and depth >= max_depth)
        ):
            continue

        feature, threshold, score = best_split(X[rows], labels)
        if feature == LEAF:
            continue
        if require_gain and not score < parent_gini - GINI_TOL:
            continue

        column = X[rows, feature]
        column = column.toarray().ravel() if sp.issparse(column) else np.asarray(column).ravel()
        go_left = column <= threshold

        nodes[node_id][0] = feature
        nodes[node_id][1] = threshold
        # right first so the left subtree is numbered next (pre-order)
        stack.append((rows[~go_left], depth + 1, node_id, "right"))
        stack.append((rows[go_left], depth + 1, node_id, "left"))

    table = list(zip(*nodes))
    return DtModel(
        X.shape[1],
        feature=np.array(table[0], dtype=np.int64),
        threshold=np.array(table[1], dtype=np.float64),
        left=np.array(table[2], dtype=np.int64),
        right=np.array(table[3], dtype=np.int64),
        n_ham=np.array(table[4], dtype=np.int64),
        n_spam=np.array(table[5], dtype=np.int64),
        max_depth=max_depth,
        min_samples_split=min_samples_split,
        require_gain=require_gain,
    )
