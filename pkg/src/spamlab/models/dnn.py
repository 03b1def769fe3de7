from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import expit

from ..numeric.matrix import FeatureMatrix, as_matrix, dense_rows, seeded_rng
from ..utils import log
from ..utils.const import ClassifierKind
from ..utils.errors import ConfigError, DimensionMismatchError, NonFiniteLossError
from .base import Model, ModelRegistry, check_labels

__all__ = [
    "DnnModel",
    "train_dnn",
    "init_layers",
    "forward",
    "bce_with_logits",
    "loss_and_gradients",
]

SCORE_CHUNK_ROWS = 1024


def init_layers(
    n_features: int, hidden_sizes: Sequence[int], rng: np.random.Generator
) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """He-scaled normal weights (fan_in x fan_out) and zero biases."""
    sizes = [n_features, *hidden_sizes, 1]
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        weights.append(rng.standard_normal((fan_in, fan_out)) * np.sqrt(2.0 / fan_in))
        biases.append(np.zeros(fan_out))
    return weights, biases


def forward(
    weights: List[np.ndarray],
    biases: List[np.ndarray],
    X: np.ndarray,
    dropout: float = 0.0,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[np.ndarray, List[np.ndarray], List[Optional[np.ndarray]]]:
    """
    Output logits plus the per-layer inputs and dropout masks needed by
    backprop. Hidden layers are tanh; masks are inverted (scaled by 1/keep)
    and only drawn when dropout > 0 and an rng is given.
    """

    inputs = [X]
    tanhs: List[np.ndarray] = []
    masks: List[Optional[np.ndarray]] = []
    a = X
    for W, b in zip(weights[:-1], biases[:-1]):
        t = np.tanh(a @ W + b)
        tanhs.append(t)
        if dropout > 0.0 and rng is not None:
            keep = 1.0 - dropout
            mask = (rng.random(t.shape) < keep) / keep
            a = t * mask
        else:
            mask = None
            a = t
        masks.append(mask)
        inputs.append(a)

    logits = (a @ weights[-1] + biases[-1]).ravel()
    return logits, inputs, list(zip(tanhs, masks))


def bce_with_logits(logits: np.ndarray, y: np.ndarray) -> float:
    """Mean binary cross-entropy of sigmoid(logits), without overflow."""
    losses = np.maximum(logits, 0.0) - logits * y + np.log1p(np.exp(-np.abs(logits)))
    return float(losses.mean())


def loss_and_gradients(
    weights: List[np.ndarray],
    biases: List[np.ndarray],
    X: np.ndarray,
    y: np.ndarray,
    dropout: float = 0.0,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[float, List[np.ndarray], List[np.ndarray]]:
    logits, inputs, hidden = forward(weights, biases, X, dropout, rng)
    loss = bce_with_logits(logits, y)

    n = X.shape[0]
    delta = ((expit(logits) - y) / n)[:, None]
    grad_w: List[np.ndarray] = [np.empty(0)] * len(weights)
    grad_b: List[np.ndarray] = [np.empty(0)] * len(biases)

    for layer in range(len(weights) - 1, -1, -1):
        grad_w[layer] = inputs[layer].T @ delta
        grad_b[layer] = delta.sum(axis=0)
        if layer == 0:
            break
        upstream = delta @ weights[layer].T
        t, mask = hidden[layer - 1]
        if mask is not None:
            upstream = upstream * mask
        delta = upstream * (1.0 - t * t)

    return loss, grad_w, grad_b


@ModelRegistry.register_model(ClassifierKind.DNN)
class DnnModel(Model):
    def __init__(
        self,
        weights: List[np.ndarray],
        biases: List[np.ndarray],
        hidden_sizes: Sequence[int] = (256, 128, 64, 32, 16),
        dropout: float = 0.3,
        learning_rate: float = 0.01,
        momentum: float = 0.9,
        batch_size: int = 32,
        epochs: int = 30,
        seed: int = 0,
        loss_history: Sequence[float] = (),
    ) -> None:
        self.weights = weights
        self.biases = biases
        self.loss_history = list(loss_history)
        self._check_chain()
        super().__init__(
            weights[0].shape[0],
            hidden_sizes=tuple(int(h) for h in hidden_sizes),
            dropout=dropout,
            learning_rate=learning_rate,
            momentum=momentum,
            batch_size=batch_size,
            epochs=epochs,
            seed=seed,
        )

    def _check_chain(self) -> None:
        if len(self.weights) != len(self.biases) or not self.weights:
            raise DimensionMismatchError(len(self.weights), len(self.biases), "layers")
        for W, b, nxt in zip(self.weights, self.biases, self.weights[1:] + [None]):
            if b.shape[0] != W.shape[1]:
                raise DimensionMismatchError(W.shape[1], b.shape[0], "bias entries")
            if nxt is not None and nxt.shape[0] != W.shape[1]:
                raise DimensionMismatchError(W.shape[1], nxt.shape[0], "layer inputs")
        if self.weights[-1].shape[1] != 1:
            raise DimensionMismatchError(1, self.weights[-1].shape[1], "output units")

    def logits(self, X: FeatureMatrix) -> np.ndarray:
        out = np.empty(X.shape[0])
        for start in range(0, X.shape[0], SCORE_CHUNK_ROWS):
            block = dense_rows(X, slice(start, start + SCORE_CHUNK_ROWS))
            out[start : start + block.shape[0]] = forward(self.weights, self.biases, block)[0]
        return out

    def _score(self, X: FeatureMatrix) -> np.ndarray:
        return expit(self.logits(X))

    def parameters(self) -> Dict[str, Any]:
        return {
            "weights": list(self.weights),
            "biases": list(self.biases),
            "loss_history": list(self.loss_history),
        }

    @classmethod
    def from_parameters(cls, n_features, hyperparameters, parameters) -> "DnnModel":
        weights = [np.asarray(W, dtype=np.float64) for W in parameters["weights"]]
        biases = [np.asarray(b, dtype=np.float64) for b in parameters["biases"]]
        model = cls(
            weights,
            biases,
            loss_history=parameters.get("loss_history", ()),
            **hyperparameters,
        )
        if model.n_features != n_features:
            raise DimensionMismatchError(n_features, model.n_features, "input units")
        return model


@ModelRegistry.register_trainer(ClassifierKind.DNN)
def train_dnn(
    X: FeatureMatrix,
    y,
    hidden_sizes: Sequence[int] = (256, 128, 64, 32, 16),
    dropout: float = 0.3,
    learning_rate: float = 0.01,
    momentum: float = 0.9,
    batch_size: int = 32,
    epochs: int = 30,
    seed: int = 0,
) -> DnnModel:
    """
    Mini-batch SGD with momentum on binary cross-entropy. Sparse rows are
    densified one batch at a time.
    """

    X = as_matrix(X)
    labels = check_labels(y, X.shape[0], both_classes=False).astype(np.float64)
    if not 0.0 <= dropout < 1.0:
        raise ConfigError(f"dropout must lie in [0, 1), got {dropout}")
    if batch_size < 1 or epochs < 0 or learning_rate <= 0:
        raise ConfigError(
            f"Invalid DNN schedule: batch_size={batch_size}, epochs={epochs}, "
            f"learning_rate={learning_rate}"
        )

    n, d = X.shape
    rng = seeded_rng(seed)
    weights, biases = init_layers(d, hidden_sizes, rng)
    vel_w = [np.zeros_like(W) for W in weights]
    vel_b = [np.zeros_like(b) for b in biases]
    history: List[float] = []

    for epoch in range(epochs):
        total = 0.0
        order = rng.permutation(n)
        for batch, start in enumerate(range(0, n, batch_size)):
            idx = np.sort(order[start : start + batch_size])
            xb = dense_rows(X, idx)
            loss, grad_w, grad_b = loss_and_gradients(
                weights, biases, xb, labels[idx], dropout, rng
            )
            if not np.isfinite(loss):
                raise NonFiniteLossError(
                    {"epoch": epoch, "batch": batch, "loss": loss, "learning_rate": learning_rate}
                )

            for layer in range(len(weights)):
                vel_w[layer] = momentum * vel_w[layer] - learning_rate * grad_w[layer]
                vel_b[layer] = momentum * vel_b[layer] - learning_rate * grad_b[layer]
                weights[layer] += vel_w[layer]
                biases[layer] += vel_b[layer]

            if not all(np.all(np.isfinite(W)) for W in weights):
                raise NonFiniteLossError(
                    {"epoch": epoch, "batch": batch, "loss": loss, "reason": "weights"}
                )
            total += loss * idx.size

        history.append(total / n)
        log.info("DNN epoch", f"{epoch + 1}/{epochs} loss={history[-1]:.4f}", color="cyan")

    return DnnModel(
        weights,
        biases,
        hidden_sizes=hidden_sizes,
        dropout=dropout,
        learning_rate=learning_rate,
        momentum=momentum,
        batch_size=batch_size,
        epochs=epochs,
        seed=seed,
        loss_history=history,
    )
