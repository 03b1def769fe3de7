import re
from typing import List

__all__ = ["normalize_tokenize"]

# every maximal run of alphanumerics; underscore counts as a separator
TOKEN_PATTERN = re.compile(r"[^\W_]+")


def normalize_tokenize(text: str) -> List[str]:
    if not text:
        return []
    return TOKEN_PATTERN.findall(text.lower())
