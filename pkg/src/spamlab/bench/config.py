import os
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional, Union

from ..records import SplitSpec
from ..utils.const import (
    DEFAULT_PCA_K,
    DEFAULT_SEED,
    DEFAULT_TRAIN_FRACTION,
    ClassifierKind,
    FeatureMethod,
    ModelPreset,
)
from ..utils.errors import ConfigError

__all__ = ["ExperimentConfig", "resolve_seed", "SEED_ENV"]

SEED_ENV = "SPAMLAB_SEED"

# trainers that draw from a generator take the cell seed as a hyperparameter
SEEDED_KINDS = (ClassifierKind.SVM, ClassifierKind.DNN)


def resolve_seed(seed: Optional[int] = None) -> int:
    """SPAMLAB_SEED wins over the given seed when it is set."""
    raw = os.environ.get(SEED_ENV)
    if raw is not None and raw.strip():
        try:
            return int(raw)
        except ValueError as e:
            raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}") from e
    return DEFAULT_SEED if seed is None else seed


def _coerce(enum_cls, value, what: str):
    if isinstance(value, enum_cls):
        return value
    try:
        return enum_cls(str(value).lower())
    except ValueError as e:
        choices = ", ".join(m.value for m in enum_cls)
        raise ConfigError(f"Unknown {what} {value!r} (expected one of {choices})") from e


def _json_safe(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_json_safe(v) for v in value]
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    return value


@dataclass(frozen=True)
class ExperimentConfig:
    data_path: str
    classifier: Union[ClassifierKind, str] = ClassifierKind.NB
    features: Union[FeatureMethod, str] = FeatureMethod.BOW
    train_fraction: float = DEFAULT_TRAIN_FRACTION
    seed: int = DEFAULT_SEED
    pca_k: int = DEFAULT_PCA_K
    # overrides on top of ModelPreset, filtered per classifier
    hyperparameters: Dict[str, Any] = field(default_factory=dict)
    threshold: Optional[float] = None
    model_seed: Optional[int] = None
    stopwords_path: Optional[str] = None
    dump_vocab: Optional[str] = None
    save_model: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "classifier", _coerce(ClassifierKind, self.classifier, "classifier"))
        object.__setattr__(self, "features", _coerce(FeatureMethod, self.features, "feature method"))
        object.__setattr__(self, "hyperparameters", dict(self.hyperparameters))

    def validate(self) -> "ExperimentConfig":
        if not self.data_path:
            raise ConfigError("A data path is required")
        self.split_spec()
        if not -(2**63) <= self.effective_model_seed < 2**64:
            raise ConfigError(f"model_seed must fit in 64 bits, got {self.effective_model_seed}")
        if self.pca_k < 1:
            raise ConfigError(f"pca_k must be at least 1, got {self.pca_k}")

        known = set()
        for kind in ClassifierKind:
            known.update(ModelPreset.of(kind))
        unknown = sorted(set(self.hyperparameters) - known)
        if unknown:
            raise ConfigError(f"Unknown hyperparameters: {', '.join(unknown)}")

        hyper = self.model_hyperparameters()
        if self.classifier == ClassifierKind.KNN and hyper["k"] < 1:
            raise ConfigError(f"k must be at least 1, got {hyper['k']}")
        if self.classifier == ClassifierKind.SVM and hyper["C"] <= 0:
            raise ConfigError(f"C must be positive, got {hyper['C']}")
        if self.classifier == ClassifierKind.DNN and hyper["epochs"] < 0:
            raise ConfigError(f"epochs must be non-negative, got {hyper['epochs']}")
        return self

    def split_spec(self) -> SplitSpec:
        return SplitSpec(train_fraction=self.train_fraction, seed=self.seed)

    @property
    def effective_model_seed(self) -> int:
        return self.seed if self.model_seed is None else self.model_seed

    @property
    def cell(self) -> str:
        return f"{self.classifier.value}_{self.features.value}"

    def model_hyperparameters(self) -> Dict[str, Any]:
        hyper = ModelPreset.of(self.classifier)
        hyper.update({k: v for k, v in self.hyperparameters.items() if k in hyper})
        if self.classifier in SEEDED_KINDS:
            hyper["seed"] = self.effective_model_seed
        return hyper

    def for_cell(
        self, classifier: ClassifierKind, features: FeatureMethod, model_seed: int
    ) -> "ExperimentConfig":
        return replace(
            self,
            classifier=classifier,
            features=features,
            model_seed=model_seed,
            save_model=None,
        )

    def echo(self) -> Dict[str, Any]:
        """JSON-ready view of everything that determines the run's numbers."""
        return {
            "data_path": self.data_path,
            "classifier": self.classifier.value,
            "features": self.features.value,
            "train_fraction": self.train_fraction,
            "split_seed": self.seed,
            "model_seed": self.effective_model_seed,
            "pca_k": self.pca_k if self.features == FeatureMethod.TFIDF_PCA else None,
            "hyperparameters": _json_safe(self.model_hyperparameters()),
            "threshold": self.threshold,
            "stopwords_path": self.stopwords_path,
        }
