from abc import ABC, abstractmethod
from typing import Any, Callable, ClassVar, Dict, Optional, Type

import numpy as np

from ..numeric.matrix import FeatureMatrix, as_matrix, check_columns
from ..utils.const import ClassifierKind
from ..utils.errors import LengthMismatchError, SingleClassError

__all__ = ["Model", "ModelRegistry", "check_labels"]


def check_labels(y, n_rows: int, both_classes: bool = True) -> np.ndarray:
    """Labels as an int array of {0 = ham, 1 = spam}; {-1, +1} is accepted too."""
    y = np.asarray(y).ravel()
    if y.shape[0] != n_rows:
        raise LengthMismatchError(f"{n_rows} feature rows but {y.shape[0]} labels")

    y = (y > 0).astype(np.int64)
    if both_classes and np.unique(y).size < 2:
        raise SingleClassError("Training labels must contain both ham and spam")

    return y


class Model(ABC):
    kind: ClassVar[ClassifierKind]
    # "probability" scores threshold at 0.5, "margin" scores at 0.0
    score_scale: ClassVar[str] = "probability"

    def __init__(self, n_features: int, **hyperparameters) -> None:
        self.n_features = n_features
        self.hyperparameters: Dict[str, Any] = dict(hyperparameters)

        self.params: Dict = {}
        self.update()

    def _name(self) -> str:
        return self.__class__.__name__

    def update(self) -> None:
        self.params["kind"] = self.kind.value
        self.params["n_features"] = self.n_features
        self.params.update(self.hyperparameters)

    def get_params(self) -> Dict:
        return self.params

    @property
    def default_threshold(self) -> float:
        return 0.0 if self.score_scale == "margin" else 0.5

    def score(self, X: FeatureMatrix) -> np.ndarray:
        X = as_matrix(X)
        check_columns(X, self.n_features)
        return self._score(X)

    def predict(self, X: FeatureMatrix, threshold: Optional[float] = None) -> np.ndarray:
        threshold = self.default_threshold if threshold is None else threshold
        return (self.score(X) >= threshold).astype(np.int64)

    @abstractmethod
    def _score(self, X: FeatureMatrix) -> np.ndarray: ...

    @abstractmethod
    def parameters(self) -> Dict[str, Any]: ...

    @classmethod
    @abstractmethod
    def from_parameters(
        cls, n_features: int, hyperparameters: Dict[str, Any], parameters: Dict[str, Any]
    ) -> "Model": ...


class ModelRegistry:
    _trainers: Dict[ClassifierKind, Callable] = {}
    _models: Dict[ClassifierKind, Type[Model]] = {}

    @classmethod
    def register_trainer(cls, kind: ClassifierKind):
        def decorator(func):
            cls._trainers[kind] = func
            return func

        return decorator

    @classmethod
    def register_model(cls, kind: ClassifierKind):
        def decorator(target_cls):
            target_cls.kind = kind
            cls._models[kind] = target_cls
            return target_cls

        return decorator

    @classmethod
    def trainer(cls, kind: ClassifierKind) -> Callable:
        if kind not in cls._trainers:
            raise ValueError(f"No trainer registered for {kind}")
        return cls._trainers[kind]

    @classmethod
    def model_class(cls, kind: ClassifierKind) -> Type[Model]:
        if kind not in cls._models:
            raise ValueError(f"No model registered for {kind}")
        return cls._models[kind]

    @classmethod
    def train(cls, kind: ClassifierKind, X: FeatureMatrix, y, **hyperparameters) -> Model:
        return cls.trainer(kind)(X, y, **hyperparameters)
