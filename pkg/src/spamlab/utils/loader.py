import importlib.resources as resources
import os
from typing import List, Optional

from .errors import DataIOError

__all__ = ["read_word_list", "write_text"]


def read_word_list(path: Optional[str] = None) -> List[str]:
    """
    Read a one-word-per-line UTF-8 list. Without a path the packaged
    stopword resource is used. Blank lines and '#' comments are skipped.
    """

    if path is None:
        from .. import assets

        with resources.files(assets).joinpath("stopwords.txt").open(
            "r", encoding="utf-8"
        ) as f:
            lines = f.readlines()
    else:
        path = os.path.abspath(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                lines = f.readlines()
        except (OSError, UnicodeDecodeError) as e:
            raise DataIOError(f"Failed to read word list {path}: {e}") from e

    words = []
    for line in lines:
        word = line.strip()
        if not word or word.startswith("#"):
            continue
        words.append(word.lower())

    return words


def write_text(path: str, text: str) -> str:
    dirname = os.path.dirname(path)
    try:
        if dirname:
            os.makedirs(dirname, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise DataIOError(f"Failed to write {path}: {e}") from e

    return path
