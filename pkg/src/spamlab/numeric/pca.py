from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from ..utils import log
from ..utils.errors import DimensionMismatchError
from .eigen import fix_signs, symmetric_eigen
from .matrix import (
    FeatureMatrix,
    as_matrix,
    centered_gram,
    centered_transpose_dot,
    check_columns,
    column_means,
)

__all__ = ["PcaModel", "pca_fit", "pca_transform", "pca_inverse_transform", "scree_data"]

# eigenvalues at or below this fraction of the largest count as zero
RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class PcaModel:
    mean: np.ndarray  # (d,)
    components: np.ndarray  # (k, d), rows are principal axes
    explained_variance: np.ndarray  # (k,)
    explained_variance_ratio: np.ndarray  # (k,)
    total_variance: float
    n_samples: int
    requested_k: int
    rank_deficient: bool = False
    used_gram: bool = False

    @property
    def k(self) -> int:
        return self.components.shape[0]

    @property
    def d(self) -> int:
        return self.components.shape[1]


def _spectrum(X: FeatureMatrix, mean: np.ndarray, use_gram: bool, method: str):
    n = X.shape[0]
    if use_gram:
        owner = np.zeros(n, dtype=np.int64)
        gram = centered_gram(X, mean.reshape(1, -1), owner) / (n - 1)
        return symmetric_eigen(gram, method=method), owner

    Xc = (X.toarray() if sp.issparse(X) else X) - mean
    cov = Xc.T @ Xc / (n - 1)
    return symmetric_eigen(cov, method=method), None


def pca_fit(
    X: FeatureMatrix,
    k: int,
    use_gram: Optional[bool] = None,
    method: str = "auto",
) -> PcaModel:
    """
    Mean-centred PCA. When n < d the n x n Gram matrix is decomposed instead
    of the d x d covariance and the axes are mapped back through X^T.
    """

    X = as_matrix(X)
    n, d = X.shape
    if n < 2:
        raise DimensionMismatchError(2, n, "rows (at least)")
    if k < 1 or k > min(n - 1, d):
        raise DimensionMismatchError(min(n - 1, d), k, "components (at most)")

    use_gram = n < d if use_gram is None else use_gram
    mean = column_means(X)
    eig, owner = _spectrum(X, mean, use_gram, method)

    values = np.clip(eig.eigenvalues, 0.0, None)
    total = float(values.sum())
    lead = float(values[0]) if values.size else 0.0
    positive = int(np.sum(values > RANK_TOL * lead)) if total > 0 else 0

    achievable = min(k, positive)
    rank_deficient = achievable < k
    if rank_deficient:
        log.warn(f"PCA rank too low: {achievable} of {k} requested components have positive variance")

    if use_gram:
        U = eig.eigenvectors[:, :achievable]
        axes = centered_transpose_dot(X, mean.reshape(1, -1), owner, U)
        norms = np.linalg.norm(axes, axis=0)
        norms[norms == 0.0] = 1.0
        axes = fix_signs(axes / norms)
    else:
        axes = eig.eigenvectors[:, :achievable]

    kept = values[:achievable]
    ratios = kept / total if total > 0 else np.zeros_like(kept)

    return PcaModel(
        mean=mean,
        components=np.ascontiguousarray(axes.T),
        explained_variance=kept,
        explained_variance_ratio=ratios,
        total_variance=total,
        n_samples=n,
        requested_k=k,
        rank_deficient=rank_deficient,
        used_gram=use_gram,
    )


def pca_transform(model: PcaModel, X: FeatureMatrix) -> np.ndarray:
    if model.k == 0:
        raise DimensionMismatchError(1, 0, "principal components (at least)")
    X = as_matrix(X)
    check_columns(X, model.d)
    projected = np.asarray(X @ model.components.T)
    return projected - model.mean @ model.components.T


def pca_inverse_transform(model: PcaModel, Z: np.ndarray) -> np.ndarray:
    Z = np.asarray(Z, dtype=np.float64)
    if Z.ndim == 1:
        Z = Z.reshape(1, -1)
    if Z.shape[1] != model.k:
        raise DimensionMismatchError(model.k, Z.shape[1])
    return Z @ model.components + model.mean


def scree_data(model: PcaModel) -> List[Tuple[int, float]]:
    return [(i + 1, float(r)) for i, r in enumerate(model.explained_variance_ratio)]
