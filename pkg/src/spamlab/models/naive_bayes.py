from typing import Any, Dict, Optional

import numpy as np
import scipy.sparse as sp
from scipy.special import logsumexp

from ..numeric.matrix import FeatureMatrix, as_matrix
from ..utils.const import ClassifierKind
from ..utils.errors import NegativeFeatureError
from .base import Model, ModelRegistry, check_labels

__all__ = ["NbModel", "train_nb", "score_nb"]

VARIANTS = ("multinomial", "gaussian")


@ModelRegistry.register_model(ClassifierKind.NB)
class NbModel(Model):
    def __init__(
        self,
        n_features: int,
        variant: str,
        log_priors: np.ndarray,
        feature_log_prob: Optional[np.ndarray] = None,
        means: Optional[np.ndarray] = None,
        variances: Optional[np.ndarray] = None,
        alpha: float = 1.0,
        var_floor: float = 1e-9,
    ) -> None:
        self.variant = variant
        self.log_priors = log_priors  # (2,) ham, spam
        self.feature_log_prob = feature_log_prob  # (2, d) multinomial
        self.means = means  # (2, d) gaussian
        self.variances = variances  # (2, d) gaussian
        super().__init__(n_features, variant=variant, alpha=alpha, var_floor=var_floor)

    def joint_log_likelihood(self, X: FeatureMatrix) -> np.ndarray:
        if self.variant == "multinomial":
            jll = np.asarray(X @ self.feature_log_prob.T)
        else:
            dense = X.toarray() if sp.issparse(X) else X
            jll = np.empty((dense.shape[0], 2))
            for c in range(2):
                var = self.variances[c]
                jll[:, c] = -0.5 * (
                    np.sum(np.log(2.0 * np.pi * var))
                    + np.sum((dense - self.means[c]) ** 2 / var, axis=1)
                )
        return jll + self.log_priors

    def posterior(self, X: FeatureMatrix) -> np.ndarray:
        """(n, 2) class posteriors via log-sum-exp normalisation."""
        jll = self.joint_log_likelihood(X)
        return np.exp(jll - logsumexp(jll, axis=1, keepdims=True))

    def _score(self, X: FeatureMatrix) -> np.ndarray:
        return self.posterior(X)[:, 1]

    def parameters(self) -> Dict[str, Any]:
        params: Dict[str, Any] = {"log_priors": self.log_priors}
        if self.variant == "multinomial":
            params["feature_log_prob"] = self.feature_log_prob
        else:
            params["means"] = self.means
            params["variances"] = self.variances
        return params

    @classmethod
    def from_parameters(cls, n_features, hyperparameters, parameters) -> "NbModel":
        return cls(
            n_features,
            variant=hyperparameters["variant"],
            log_priors=parameters["log_priors"],
            feature_log_prob=parameters.get("feature_log_prob"),
            means=parameters.get("means"),
            variances=parameters.get("variances"),
            alpha=hyperparameters["alpha"],
            var_floor=hyperparameters["var_floor"],
        )


def _has_negative(X: FeatureMatrix) -> bool:
    data = X.data if sp.issparse(X) else X
    return data.size > 0 and float(data.min()) < 0.0


@ModelRegistry.register_trainer(ClassifierKind.NB)
def train_nb(
    X: FeatureMatrix,
    y,
    variant: Optional[str] = None,
    alpha: float = 1.0,
    var_floor: float = 1e-9,
) -> NbModel:
    """
    variant=None picks multinomial for sparse count features and gaussian
    for dense (PCA) features.
    """

    X = as_matrix(X)
    y = check_labels(y, X.shape[0])
    if variant is None:
        variant = "multinomial" if sp.issparse(X) else "gaussian"
    if variant not in VARIANTS:
        raise ValueError(f"Unknown naive Bayes variant: {variant}")

    n, d = X.shape
    class_counts = np.bincount(y, minlength=2).astype(np.float64)
    log_priors = np.log(class_counts / n)

    if variant == "multinomial":
        if _has_negative(X):
            raise NegativeFeatureError("Multinomial naive Bayes needs non-negative features")
        term_counts = np.vstack(
            [np.asarray(X[y == c].sum(axis=0)).ravel() for c in range(2)]
        )
        smoothed = term_counts + alpha
        feature_log_prob = np.log(smoothed) - np.log(smoothed.sum(axis=1, keepdims=True))
        return NbModel(
            d,
            variant,
            log_priors,
            feature_log_prob=feature_log_prob,
            alpha=alpha,
            var_floor=var_floor,
        )

    dense = X.toarray() if sp.issparse(X) else X
    means = np.vstack([dense[y == c].mean(axis=0) for c in range(2)])
    variances = np.vstack([dense[y == c].var(axis=0) for c in range(2)])
    variances = np.maximum(variances, var_floor)

    return NbModel(
        d,
        variant,
        log_priors,
        means=means,
        variances=variances,
        alpha=alpha,
        var_floor=var_floor,
    )


def score_nb(model: NbModel, x: FeatureMatrix) -> np.ndarray:
    return model.score(x)
