from functools import lru_cache

from nltk.stem.porter import PorterStemmer

__all__ = ["stem"]

_porter = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


@lru_cache(maxsize=65536)
def stem(token: str) -> str:
    """Classic Porter stem; digit-only tokens pass through unchanged."""
    if token.isdigit():
        return token
    return _porter.stem(token, to_lowercase=False)
