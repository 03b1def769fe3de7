from decimal import ROUND_HALF_UP, Decimal
from typing import List, Tuple

import numpy as np

from ..numeric.matrix import seeded_rng
from ..records import Corpus, DataSplit, SplitSpec
from ..utils import log
from ..utils.const import HAM, SPAM
from ..utils.errors import EmptyCorpusError

__all__ = ["train_count", "stratified_split"]


def train_count(train_fraction: float, n: int) -> int:
    """round(train_fraction * n) with ties rounding half-up, in exact decimal."""
    value = Decimal(repr(train_fraction)) * n
    return int(value.to_integral_value(rounding=ROUND_HALF_UP))


def stratified_split(corpus: Corpus, spec: SplitSpec) -> DataSplit:
    n = len(corpus)
    if n == 0:
        raise EmptyCorpusError("Cannot split an empty corpus")

    labels = corpus.labels()
    rng = seeded_rng(spec.seed)

    groups: List[Tuple[str, np.ndarray]]
    if spec.stratified:
        groups = [(HAM, np.flatnonzero(labels == 0)), (SPAM, np.flatnonzero(labels == 1))]
        for name, indices in groups:
            if indices.size == 0:
                raise EmptyCorpusError(f"Stratified split needs {name!r} messages")
    else:
        groups = [("all", np.arange(n))]

    train: List[int] = []
    test: List[int] = []
    for _, indices in groups:
        n_train = train_count(spec.train_fraction, indices.size)
        shuffled = rng.permutation(indices)
        train.extend(int(i) for i in shuffled[:n_train])
        test.extend(int(i) for i in shuffled[n_train:])

    test_labels = labels[test] if test else labels[:0]
    degenerate = []
    if spec.train_fraction < 1.0:
        for name, value in ((HAM, 0), (SPAM, 1)):
            if (labels == value).any() and not (test_labels == value).any():
                degenerate.append(name)
                log.warn(f"Degenerate split: no {name} messages left for testing")

    return DataSplit(
        train_indices=tuple(sorted(train)),
        test_indices=tuple(sorted(test)),
        degenerate_classes=tuple(degenerate),
    )
