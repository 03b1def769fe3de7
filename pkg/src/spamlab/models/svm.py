from typing import Any, Dict, List, Tuple

import numpy as np
import scipy.sparse as sp

from ..numeric.matrix import FeatureMatrix, as_matrix, row_norms, seeded_rng
from ..utils import log
from ..utils.const import ClassifierKind
from ..utils.errors import ConfigError
from .base import Model, ModelRegistry, check_labels

__all__ = ["SvmModel", "SvmTrace", "train_svm", "svm_objectives", "kkt_violation"]


class SvmTrace:
    """Optimiser bookkeeping kept alongside a trained SvmModel."""

    def __init__(self) -> None:
        self.dual_objectives: List[float] = []
        self.epochs = 0
        self.converged = False
        self.max_violation = np.inf
        self.alpha: np.ndarray = np.zeros(0)


@ModelRegistry.register_model(ClassifierKind.SVM)
class SvmModel(Model):
    score_scale = "margin"

    def __init__(
        self,
        w: np.ndarray,
        b: float,
        C: float = 1.0,
        tol: float = 1e-4,
        max_epochs: int = 1000,
        trace: SvmTrace = None,
    ) -> None:
        self.w = w
        self.b = float(b)
        self.trace = trace if trace is not None else SvmTrace()
        super().__init__(w.shape[0], C=C, tol=tol, max_epochs=max_epochs)

    @property
    def converged(self) -> bool:
        return self.trace.converged

    def _score(self, X: FeatureMatrix) -> np.ndarray:
        return np.asarray(X @ self.w).ravel() + self.b

    def parameters(self) -> Dict[str, Any]:
        return {"w": self.w, "b": self.b}

    @classmethod
    def from_parameters(cls, n_features, hyperparameters, parameters) -> "SvmModel":
        return cls(
            np.asarray(parameters["w"], dtype=np.float64),
            parameters["b"],
            C=hyperparameters["C"],
            tol=hyperparameters["tol"],
            max_epochs=hyperparameters["max_epochs"],
        )


def _rows(X: FeatureMatrix):
    """Per-sample (indices, values) views; dense rows use the full index range."""
    if sp.issparse(X):
        X = X.tocsr()
        return [
            (X.indices[X.indptr[i] : X.indptr[i + 1]], X.data[X.indptr[i] : X.indptr[i + 1]])
            for i in range(X.shape[0])
        ]
    full = np.arange(X.shape[1])
    return [(full, X[i]) for i in range(X.shape[0])]


def svm_objectives(
    X: FeatureMatrix, signs: np.ndarray, w: np.ndarray, b: float, alpha: np.ndarray, C: float
) -> Tuple[float, float]:
    """(primal, dual) objectives of the bias-augmented soft-margin problem."""
    margins = signs * (np.asarray(X @ w).ravel() + b)
    primal = 0.5 * (w @ w + b * b) + C * np.clip(1.0 - margins, 0.0, None).sum()
    dual = alpha.sum() - 0.5 * (w @ w + b * b)
    return float(primal), float(dual)


def kkt_violation(
    X: FeatureMatrix, signs: np.ndarray, w: np.ndarray, b: float, alpha: np.ndarray, C: float
) -> float:
    """Largest projected-gradient magnitude of the dual at (alpha, w, b)."""
    grad = signs * (np.asarray(X @ w).ravel() + b) - 1.0
    projected = np.where(alpha <= 0.0, np.minimum(grad, 0.0), grad)
    projected = np.where(alpha >= C, np.maximum(grad, 0.0), projected)
    return float(np.max(np.abs(projected))) if projected.size else 0.0


@ModelRegistry.register_trainer(ClassifierKind.SVM)
def train_svm(
    X: FeatureMatrix,
    y,
    C: float = 1.0,
    tol: float = 1e-4,
    max_epochs: int = 1000,
    seed: int = 0,
) -> SvmModel:
    """
    Linear soft-margin SVM by dual coordinate descent on the hinge loss.
    The bias is learned as the weight of a constant unit feature.
    """

    X = as_matrix(X)
    labels = check_labels(y, X.shape[0])
    if C <= 0:
        raise ConfigError(f"C must be positive, got {C}")

    n, d = X.shape
    signs = np.where(labels == 1, 1.0, -1.0)
    q_diag = row_norms(X) ** 2 + 1.0
    rows = _rows(X)
    rng = seeded_rng(seed)

    alpha = np.zeros(n)
    w = np.zeros(d)
    b = 0.0
    trace = SvmTrace()

    for epoch in range(max_epochs):
        max_violation = 0.0
        for i in rng.permutation(n):
            idx, vals = rows[i]
            grad = signs[i] * (vals @ w[idx] + b) - 1.0

            a = alpha[i]
            if a <= 0.0:
                projected = min(grad, 0.0)
            elif a >= C:
                projected = max(grad, 0.0)
            else:
                projected = grad
            max_violation = max(max_violation, abs(projected))

            if projected != 0.0:
                new_a = min(max(a - grad / q_diag[i], 0.0), C)
                delta = (new_a - a) * signs[i]
                if delta != 0.0:
                    alpha[i] = new_a
                    w[idx] += delta * vals
                    b += delta

        trace.dual_objectives.append(float(alpha.sum() - 0.5 * (w @ w + b * b)))
        trace.epochs = epoch + 1
        if max_violation < tol:
            trace.converged = True
            break

    trace.alpha = alpha
    trace.max_violation = kkt_violation(X, signs, w, b, alpha, C)
    if not trace.converged:
        log.warn(f"SVM did not converge in {max_epochs} epochs (violation {trace.max_violation:.3g})")

    return SvmModel(w, b, C=C, tol=tol, max_epochs=max_epochs, trace=trace)
