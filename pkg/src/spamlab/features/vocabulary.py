from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from ..textprep import TokenizedDoc
from ..utils.errors import EmptyVocabularyError
from ..utils.loader import write_text

__all__ = ["Vocabulary", "build_vocabulary", "dump_vocabulary"]


@dataclass(frozen=True, eq=False)
class Vocabulary:
    terms: Tuple[str, ...]  # index order == lexicographic order
    doc_freq: np.ndarray
    n_train_docs: int
    term_to_index: Dict[str, int] = field(default_factory=dict)
    idf: np.ndarray = field(default=None)

    def __post_init__(self) -> None:
        if not self.term_to_index:
            object.__setattr__(
                self, "term_to_index", {t: i for i, t in enumerate(self.terms)}
            )
        if self.idf is None:
            # smoothed: ln((1 + N) / (1 + df)) + 1
            idf = np.log((1.0 + self.n_train_docs) / (1.0 + self.doc_freq)) + 1.0
            object.__setattr__(self, "idf", idf)

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.term_to_index

    def index(self, term: str) -> Optional[int]:
        return self.term_to_index.get(term)

    def df(self, term: str) -> int:
        return int(self.doc_freq[self.term_to_index[term]])


def build_vocabulary(train_docs: Iterable[TokenizedDoc]) -> Vocabulary:
    counts: Dict[str, int] = {}
    n_docs = 0
    for doc in train_docs:
        n_docs += 1
        for term in set(doc.tokens):
            counts[term] = counts.get(term, 0) + 1

    if not counts:
        raise EmptyVocabularyError("No training document yields any token")

    terms = tuple(sorted(counts))
    doc_freq = np.array([counts[t] for t in terms], dtype=np.int64)

    return Vocabulary(terms=terms, doc_freq=doc_freq, n_train_docs=n_docs)


def dump_vocabulary(vocab: Vocabulary, path: str) -> str:
    lines = [f"{t}\t{i}\t{int(df)}\n" for i, (t, df) in enumerate(zip(vocab.terms, vocab.doc_freq))]
    return write_text(path, "".join(lines))
