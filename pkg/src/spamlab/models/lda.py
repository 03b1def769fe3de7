from typing import Any, Dict, Tuple

import numpy as np
import scipy.sparse as sp
from scipy import linalg
from scipy.special import expit

from ..numeric.matrix import (
    FeatureMatrix,
    as_matrix,
    centered_gram,
    centered_transpose_dot,
)
from ..utils.const import ClassifierKind, EPSILON
from ..utils.errors import DimensionMismatchError, IllConditionedError
from .base import Model, ModelRegistry, check_labels

__all__ = [
    "LdaModel",
    "train_lda",
    "within_class_scatter",
    "between_class_scatter",
    "fisher_criterion",
]

# above this many features the ridge system is solved in sample space
DENSE_SCATTER_MAX_DIM = 2000
LDA_REFINE_STEPS = 3
LDA_REFINE_TOL = 1e-12


@ModelRegistry.register_model(ClassifierKind.LDA)
class LdaModel(Model):
    def __init__(
        self,
        w: np.ndarray,
        projected_means: np.ndarray,
        pooled_variance: float,
        log_priors: np.ndarray,
        ridge: float,
        fisher: float = 0.0,
        ridge_scale: float = 1e-6,
    ) -> None:
        self.w = w  # unit norm
        self.projected_means = projected_means  # (2,) ham, spam
        self.pooled_variance = float(pooled_variance)
        self.log_priors = log_priors
        self.ridge = float(ridge)
        self.fisher = float(fisher)
        super().__init__(w.shape[0], ridge_scale=ridge_scale)

    def project(self, X: FeatureMatrix) -> np.ndarray:
        return np.asarray(X @ self.w).ravel()

    def _score(self, X: FeatureMatrix) -> np.ndarray:
        p = self.project(X)
        log_lik = -((p[:, None] - self.projected_means[None, :]) ** 2) / (
            2.0 * self.pooled_variance
        )
        log_post = log_lik + self.log_priors
        return expit(log_post[:, 1] - log_post[:, 0])

    def parameters(self) -> Dict[str, Any]:
        return {
            "w": self.w,
            "projected_means": self.projected_means,
            "pooled_variance": self.pooled_variance,
            "log_priors": self.log_priors,
            "ridge": self.ridge,
            "fisher": self.fisher,
        }

    @classmethod
    def from_parameters(cls, n_features, hyperparameters, parameters) -> "LdaModel":
        return cls(
            np.asarray(parameters["w"], dtype=np.float64),
            np.asarray(parameters["projected_means"], dtype=np.float64),
            parameters["pooled_variance"],
            np.asarray(parameters["log_priors"], dtype=np.float64),
            parameters["ridge"],
            fisher=parameters["fisher"],
            ridge_scale=hyperparameters["ridge_scale"],
        )


def _class_means(X: FeatureMatrix, y: np.ndarray) -> np.ndarray:
    return np.vstack([np.asarray(X[y == c].mean(axis=0)).ravel() for c in range(2)])


def within_class_scatter(X: FeatureMatrix, y: np.ndarray) -> np.ndarray:
    """S_W = sum over classes of sum_i (x_i - mu_c)(x_i - mu_c)^T, dense d x d."""
    dense = X.toarray() if sp.issparse(X) else np.asarray(X, dtype=np.float64)
    means = _class_means(dense, y)
    centered = dense - means[y]
    return centered.T @ centered


def between_class_scatter(X: FeatureMatrix, y: np.ndarray) -> np.ndarray:
    """S_B = sum over classes of N_c (mu_c - mu)(mu_c - mu)^T."""
    means = _class_means(X, y)
    overall = np.asarray(X.mean(axis=0)).ravel()
    counts = np.bincount(y, minlength=2)
    diffs = means - overall
    return (diffs.T * counts) @ diffs


def fisher_criterion(X: FeatureMatrix, y: np.ndarray, w: np.ndarray) -> float:
    """J(w) = w^T S_B w / w^T S_W w, evaluated through projections."""
    p = np.asarray(X @ w).ravel()
    counts = np.bincount(y, minlength=2)
    proj_means = np.array([p[y == c].mean() for c in range(2)])
    between = float(np.sum(counts * (proj_means - p.mean()) ** 2))
    within = float(np.sum((p - proj_means[y]) ** 2))
    if within == 0.0:
        return float("inf") if between > 0.0 else 0.0
    return between / within


def _solve_dense(X, y, means, delta, ridge_scale) -> Tuple[np.ndarray, float]:
    s_w = within_class_scatter(X, y)
    d = s_w.shape[0]
    trace = float(np.trace(s_w))
    ridge = ridge_scale * trace / d if trace > 0 else ridge_scale
    try:
        factor = linalg.cho_factor(s_w + ridge * np.eye(d))
        return linalg.cho_solve(factor, delta), ridge
    except linalg.LinAlgError as e:
        raise IllConditionedError(f"Within-class scatter solve failed: {e}") from e


def _solve_sample_space(X, y, means, delta, ridge_scale) -> Tuple[np.ndarray, float]:
    # (eps I + Z^T Z)^-1 v = (v - Z^T (eps I + Z Z^T)^-1 Z v) / eps
    # with Z the class-centred rows, never densified
    n, d = X.shape
    gram = centered_gram(X, means, y)
    trace = float(np.trace(gram))
    ridge = ridge_scale * trace / d if trace > 0 else ridge_scale

    def project(v: np.ndarray) -> np.ndarray:
        return np.asarray(X @ v).ravel() - (means @ v)[y]

    try:
        factor = linalg.cho_factor(gram + ridge * np.eye(n))
    except linalg.LinAlgError as e:
        raise IllConditionedError(f"Sample-space scatter solve failed: {e}") from e

    def solve(rhs: np.ndarray) -> np.ndarray:
        inner = linalg.cho_solve(factor, project(rhs))
        return (rhs - centered_transpose_dot(X, means, y, inner)) / ridge

    # iterative refinement against (Z^T Z + eps I) w = delta
    w = solve(delta)
    target = LDA_REFINE_TOL * np.linalg.norm(delta)
    for _ in range(LDA_REFINE_STEPS):
        residual = delta - centered_transpose_dot(X, means, y, project(w)) - ridge * w
        if np.linalg.norm(residual) <= target:
            break
        w = w + solve(residual)
    return w, ridge


@ModelRegistry.register_trainer(ClassifierKind.LDA)
def train_lda(X: FeatureMatrix, y, ridge_scale: float = 1e-6) -> LdaModel:
    """
    Two-class Fisher discriminant: w = (S_W + eps I)^-1 (mu_spam - mu_ham),
    normalised, with eps = ridge_scale * trace(S_W) / d.
    """

    X = as_matrix(X)
    y = check_labels(y, X.shape[0])
    n, d = X.shape
    if n <= 2:
        raise DimensionMismatchError(3, n, "samples (at least)")

    means = _class_means(X, y)
    delta = means[1] - means[0]

    if d <= DENSE_SCATTER_MAX_DIM or d <= n:
        w, ridge = _solve_dense(X, y, means, delta, ridge_scale)
    else:
        w, ridge = _solve_sample_space(X, y, means, delta, ridge_scale)

    if not np.all(np.isfinite(w)):
        raise IllConditionedError("Discriminant direction is not finite")

    norm = np.linalg.norm(w)
    if norm == 0.0:
        # equal class means: every direction has J(w) = 0
        w = np.zeros(d)
        w[0] = 1.0
    else:
        w = w / norm

    p = np.asarray(X @ w).ravel()
    projected_means = np.array([p[y == c].mean() for c in range(2)])
    pooled = float(np.sum((p - projected_means[y]) ** 2) / (n - 2))
    pooled = max(pooled, EPSILON)

    counts = np.bincount(y, minlength=2).astype(np.float64)

    return LdaModel(
        w,
        projected_means,
        pooled,
        np.log(counts / n),
        ridge,
        fisher=fisher_criterion(X, y, w),
        ridge_scale=ridge_scale,
    )
