from typing import Sequence, Union

import numpy as np
import scipy.sparse as sp

from ..utils.errors import DimensionMismatchError

__all__ = [
    "FeatureMatrix",
    "seeded_rng",
    "as_matrix",
    "dense_rows",
    "row_norms",
    "column_means",
    "check_columns",
    "centered_gram",
    "centered_transpose_dot",
]

# BoW / TF-IDF rows live in CSR storage, PCA output is dense row-major
FeatureMatrix = Union[np.ndarray, sp.csr_matrix]


def seeded_rng(seed: int) -> np.random.Generator:
    """Generator for any 64-bit seed; negative seeds wrap onto the unsigned range."""
    return np.random.default_rng(int(seed) % 2**64)


def as_matrix(X) -> FeatureMatrix:
    if sp.issparse(X):
        return sp.csr_matrix(X, dtype=np.float64)
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2:
        raise ValueError(f"Feature matrix must be 2-D, got shape {X.shape}")
    return X


def dense_rows(X: FeatureMatrix, rows: Union[slice, Sequence[int], np.ndarray]) -> np.ndarray:
    block = X[rows]
    if sp.issparse(block):
        return block.toarray()
    return np.asarray(block, dtype=np.float64)


def row_norms(X: FeatureMatrix) -> np.ndarray:
    if sp.issparse(X):
        return np.sqrt(np.asarray(X.multiply(X).sum(axis=1)).ravel())
    return np.sqrt(np.einsum("ij,ij->i", X, X))


def column_means(X: FeatureMatrix) -> np.ndarray:
    return np.asarray(X.mean(axis=0)).ravel()


def check_columns(X: FeatureMatrix, expected: int) -> None:
    if X.shape[1] != expected:
        raise DimensionMismatchError(expected, X.shape[1])


def centered_gram(X: FeatureMatrix, row_means: np.ndarray, owner: np.ndarray) -> np.ndarray:
    """
    (X - M)(X - M)^T without densifying X, where row i of M is
    row_means[owner[i]].
    """

    XXt = X @ X.T
    XXt = XXt.toarray() if sp.issparse(XXt) else np.asarray(XXt)
    XU = np.asarray(X @ row_means.T)  # n x g
    UU = row_means @ row_means.T  # g x g
    cross = XU[:, owner]  # <x_i, mu_owner(j)>
    return XXt - cross - cross.T + UU[np.ix_(owner, owner)]


def centered_transpose_dot(
    X: FeatureMatrix, row_means: np.ndarray, owner: np.ndarray, v: np.ndarray
) -> np.ndarray:
    """(X - M)^T v for a vector or a column block v."""
    v = np.asarray(v, dtype=np.float64)
    n_groups = row_means.shape[0]
    if v.ndim == 1:
        sums = np.bincount(owner, weights=v, minlength=n_groups)
        return np.asarray(X.T @ v).ravel() - row_means.T @ sums

    sums = np.zeros((n_groups, v.shape[1]))
    np.add.at(sums, owner, v)
    return np.asarray(X.T @ v) - row_means.T @ sums
