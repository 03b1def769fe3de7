from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional

from ..utils.loader import read_word_list

__all__ = ["MANDATORY_STOPWORDS", "StopwordList", "remove_stopwords"]

MANDATORY_STOPWORDS = frozenset({"the", "a", "and", "that"})


@dataclass(frozen=True)
class StopwordList:
    words: FrozenSet[str]

    @classmethod
    def from_words(cls, words: Iterable[str]) -> "StopwordList":
        normalized = {w.strip().lower() for w in words if w.strip()}
        return cls(words=frozenset(normalized | MANDATORY_STOPWORDS))

    @classmethod
    def load(cls, path: Optional[str] = None) -> "StopwordList":
        """The packaged list, or a one-word-per-line override file."""
        return cls.from_words(read_word_list(path))

    def __contains__(self, token: str) -> bool:
        return token in self.words

    def __len__(self) -> int:
        return len(self.words)


def remove_stopwords(tokens: List[str], stops: StopwordList) -> List[str]:
    return [token for token in tokens if token not in stops.words]
