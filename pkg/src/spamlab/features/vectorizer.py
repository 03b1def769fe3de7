from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from ..textprep import TokenizedDoc
from ..utils.const import FeatureMethod
from .vocabulary import Vocabulary, build_vocabulary

__all__ = [
    "SparseVector",
    "bow_vector",
    "tfidf_vector",
    "vectors_to_csr",
    "vectorize",
    "featurize_split",
]


@dataclass(frozen=True)
class SparseVector:
    entries: Tuple[Tuple[int, float], ...]  # strictly increasing index, non-zero values
    dim: int

    @property
    def indices(self) -> List[int]:
        return [i for i, _ in self.entries]

    @property
    def values(self) -> List[float]:
        return [v for _, v in self.entries]

    def norm(self) -> float:
        return float(np.sqrt(sum(v * v for _, v in self.entries)))


def _term_counts(doc: TokenizedDoc, vocab: Vocabulary) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for token in doc.tokens:
        index = vocab.term_to_index.get(token)
        if index is not None:
            counts[index] = counts.get(index, 0) + 1
    return counts


def bow_vector(doc: TokenizedDoc, vocab: Vocabulary) -> SparseVector:
    counts = _term_counts(doc, vocab)
    entries = tuple((i, float(counts[i])) for i in sorted(counts))
    return SparseVector(entries=entries, dim=len(vocab))


def tfidf_vector(doc: TokenizedDoc, vocab: Vocabulary) -> SparseVector:
    counts = _term_counts(doc, vocab)
    indices = sorted(counts)
    weights = [counts[i] * float(vocab.idf[i]) for i in indices]

    norm = float(np.sqrt(sum(w * w for w in weights)))
    if norm > 0.0:
        weights = [w / norm for w in weights]

    return SparseVector(entries=tuple(zip(indices, weights)), dim=len(vocab))


def vectors_to_csr(vectors: Sequence[SparseVector], dim: int) -> sp.csr_matrix:
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    indices: List[int] = []
    data: List[float] = []
    for row, vec in enumerate(vectors):
        indices.extend(vec.indices)
        data.extend(vec.values)
        indptr[row + 1] = len(indices)

    return sp.csr_matrix(
        (np.array(data, dtype=np.float64), np.array(indices, dtype=np.int64), indptr),
        shape=(len(vectors), dim),
    )


def _method(method: Union[str, FeatureMethod]) -> FeatureMethod:
    method = FeatureMethod(method) if isinstance(method, str) else method
    # PCA is applied downstream; the sparse stage is plain TF-IDF
    return FeatureMethod.TFIDF if method == FeatureMethod.TFIDF_PCA else method


def vectorize(
    docs: Sequence[TokenizedDoc], vocab: Vocabulary, method: Union[str, FeatureMethod]
) -> sp.csr_matrix:
    encode = bow_vector if _method(method) == FeatureMethod.BOW else tfidf_vector
    return vectors_to_csr([encode(doc, vocab) for doc in docs], len(vocab))


def featurize_split(
    train_docs: Sequence[TokenizedDoc],
    test_docs: Sequence[TokenizedDoc],
    method: Union[str, FeatureMethod],
) -> Tuple[sp.csr_matrix, sp.csr_matrix, Vocabulary]:
    """Fit the vocabulary and idf on train only; encode both splits with it."""
    vocab = build_vocabulary(train_docs)
    return vectorize(train_docs, vocab, method), vectorize(test_docs, vocab, method), vocab
