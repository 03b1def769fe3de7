from typing import Any, Dict

import numpy as np
import scipy.sparse as sp

from ..numeric.matrix import FeatureMatrix, as_matrix, row_norms
from ..utils.const import ClassifierKind
from ..utils.errors import ConfigError
from .base import Model, ModelRegistry, check_labels

__all__ = ["KnnModel", "train_knn", "score_knn", "cosine_similarity", "knn_vote"]

SIMILARITIES = ("cosine", "euclidean")
CHUNK_ROWS = 512


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    a, b = np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64)
    denom = np.linalg.norm(a) * np.linalg.norm(b)
    return float(a @ b / denom) if denom > 0 else 0.0


def knn_vote(sims: np.ndarray, labels: np.ndarray) -> float:
    """Similarity-weighted spam share of the selected neighbours."""
    weights = np.clip(sims, 0.0, None)
    total = weights.sum()
    return float(weights[labels == 1].sum() / total) if total > 0 else 0.0


@ModelRegistry.register_model(ClassifierKind.KNN)
class KnnModel(Model):
    def __init__(
        self,
        train_matrix: FeatureMatrix,
        train_labels: np.ndarray,
        k: int = 5,
        similarity: str = "cosine",
    ) -> None:
        self.train_matrix = train_matrix
        self.train_labels = train_labels
        self.train_norms = row_norms(train_matrix)
        super().__init__(train_matrix.shape[1], k=k, similarity=similarity)

    @property
    def k(self) -> int:
        return self.hyperparameters["k"]

    def similarities(self, X: FeatureMatrix) -> np.ndarray:
        dots = X @ self.train_matrix.T
        dots = dots.toarray() if sp.issparse(dots) else np.asarray(dots)
        norms = row_norms(X)

        if self.hyperparameters["similarity"] == "cosine":
            denom = np.outer(norms, self.train_norms)
            with np.errstate(divide="ignore", invalid="ignore"):
                sims = np.where(denom > 0, dots / np.where(denom > 0, denom, 1.0), 0.0)
            return sims

        sq = norms[:, None] ** 2 + self.train_norms[None, :] ** 2 - 2.0 * dots
        return 1.0 / (1.0 + np.sqrt(np.clip(sq, 0.0, None)))

    def neighbours(self, sims: np.ndarray) -> np.ndarray:
        # stable sort keeps the lower training index first among ties
        return np.argsort(-sims, axis=1, kind="stable")[:, : self.k]

    def _score(self, X: FeatureMatrix) -> np.ndarray:
        scores = np.empty(X.shape[0])
        for start in range(0, X.shape[0], CHUNK_ROWS):
            sims = self.similarities(X[start : start + CHUNK_ROWS])
            nearest = self.neighbours(sims)
            for row, idx in enumerate(nearest):
                scores[start + row] = knn_vote(sims[row, idx], self.train_labels[idx])
        return scores

    def parameters(self) -> Dict[str, Any]:
        return {"train_matrix": self.train_matrix, "train_labels": self.train_labels}

    @classmethod
    def from_parameters(cls, n_features, hyperparameters, parameters) -> "KnnModel":
        return cls(
            as_matrix(parameters["train_matrix"]),
            np.asarray(parameters["train_labels"], dtype=np.int64),
            k=hyperparameters["k"],
            similarity=hyperparameters["similarity"],
        )


@ModelRegistry.register_trainer(ClassifierKind.KNN)
def train_knn(X: FeatureMatrix, y, k: int = 5, similarity: str = "cosine") -> KnnModel:
    X = as_matrix(X)
    y = check_labels(y, X.shape[0], both_classes=False)
    if k < 1 or k > X.shape[0]:
        raise ConfigError(f"k must lie in [1, {X.shape[0]}], got {k}")
    if similarity not in SIMILARITIES:
        raise ConfigError(f"Unknown similarity: {similarity}")

    matrix = X.copy()
    return KnnModel(matrix, y, k=k, similarity=similarity)


def score_knn(model: KnnModel, x: FeatureMatrix) -> np.ndarray:
    return model.score(x)
