from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .stemmer import stem
from .stopwords import StopwordList, remove_stopwords
from .tokenizer import normalize_tokenize

__all__ = ["TokenizedDoc", "preprocess", "preprocess_all"]


@dataclass(frozen=True)
class TokenizedDoc:
    tokens: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def preprocess(text: str, stops: StopwordList) -> TokenizedDoc:
    # tokenize -> stopwords -> stem
    tokens = remove_stopwords(normalize_tokenize(text), stops)
    stemmed = (stem(token) for token in tokens)
    return TokenizedDoc(tokens=tuple(t for t in stemmed if t))


def preprocess_all(
    texts: Iterable[str], stops: Optional[StopwordList] = None
) -> List[TokenizedDoc]:
    stops = stops if stops is not None else StopwordList.load()
    return [preprocess(text, stops) for text in texts]
