from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

import numpy as np

from ..utils.const import HAM, LABELS, SPAM
from ..utils.errors import ConfigError

__all__ = ["RawMessage", "Corpus", "SplitSpec", "DataSplit"]


@dataclass(frozen=True)
class RawMessage:
    label: str
    text: str

    def __post_init__(self) -> None:
        if self.label not in LABELS:
            raise ValueError(f"Unsupported label: {self.label!r}")
        if self.text is None:
            raise ValueError("Message text may be empty but never absent")


@dataclass(frozen=True)
class Corpus:
    messages: Tuple[RawMessage, ...]
    n_ham: int
    n_spam: int

    @classmethod
    def from_messages(cls, messages: Iterable[RawMessage]) -> "Corpus":
        messages = tuple(messages)
        n_spam = sum(1 for m in messages if m.label == SPAM)
        return cls(messages=messages, n_ham=len(messages) - n_spam, n_spam=n_spam)

    def __len__(self) -> int:
        return len(self.messages)

    @property
    def texts(self) -> List[str]:
        return [m.text for m in self.messages]

    def labels(self) -> np.ndarray:
        """1 for spam, 0 for ham, in message order."""
        return np.fromiter(
            (1 if m.label == SPAM else 0 for m in self.messages),
            dtype=np.int64,
            count=len(self.messages),
        )


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.8
    seed: int = 42
    stratified: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.train_fraction <= 1.0:
            raise ConfigError(
                f"train_fraction must lie in (0, 1], got {self.train_fraction}"
            )
        if not -(2**63) <= self.seed < 2**64:
            raise ConfigError(f"seed must fit in 64 bits, got {self.seed}")


@dataclass(frozen=True)
class DataSplit:
    train_indices: Tuple[int, ...]
    test_indices: Tuple[int, ...]
    # classes whose test partition came out empty although train_fraction < 1
    degenerate_classes: Tuple[str, ...] = field(default=())

    @property
    def degenerate(self) -> bool:
        return len(self.degenerate_classes) > 0

    def class_sizes(self, labels: np.ndarray) -> Tuple[dict, dict]:
        train = labels[list(self.train_indices)] if self.train_indices else labels[:0]
        test = labels[list(self.test_indices)] if self.test_indices else labels[:0]
        return (
            {HAM: int((train == 0).sum()), SPAM: int((train == 1).sum())},
            {HAM: int((test == 0).sum()), SPAM: int((test == 1).sum())},
        )
