import os
from typing import Dict

import pandas as pd

from ..records import Corpus, RawMessage
from ..utils import log
from ..utils.const import LABELS
from ..utils.errors import (
    BadLabelError,
    DataIOError,
    MalformedRowError,
    MissingColumnError,
)

__all__ = ["REQUIRED_COLUMNS", "load_csv"]

REQUIRED_COLUMNS = ("category", "message")


def _resolve_columns(header) -> Dict[str, str]:
    found: Dict[str, str] = {}
    for column in header:
        key = str(column).strip().lower()
        if key in REQUIRED_COLUMNS and key not in found:
            found[key] = column

    for required in REQUIRED_COLUMNS:
        if required not in found:
            raise MissingColumnError(required.capitalize())

    return found


def load_csv(path: str) -> Corpus:
    """
    Load a labelled SMS CSV with a header row holding (case-insensitively)
    'Category' and 'Message' columns. Extra columns are ignored.
    """

    path = os.path.abspath(path)
    if not os.path.isfile(path):
        raise DataIOError(f"Data file not found: {path}")

    try:
        frame = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            encoding="utf-8-sig",
            quotechar='"',
            doublequote=True,
        )
    except pd.errors.EmptyDataError as e:
        raise MissingColumnError("Category") from e
    except pd.errors.ParserError as e:
        raise MalformedRowError(f"Malformed CSV in {path}: {e}") from e
    except (OSError, UnicodeDecodeError) as e:
        raise DataIOError(f"Failed to read {path}: {e}") from e

    columns = _resolve_columns(frame.columns)
    labels = frame[columns["category"]].fillna("")
    texts = frame[columns["message"]].fillna("")

    messages = []
    for row, (raw_label, text) in enumerate(zip(labels, texts), start=1):
        label = str(raw_label).strip().lower()
        if label not in LABELS:
            raise BadLabelError(row, str(raw_label))
        messages.append(RawMessage(label=label, text=str(text)))

    corpus = Corpus.from_messages(messages)
    log.info("Corpus", f"{len(corpus)} messages ({corpus.n_ham} ham / {corpus.n_spam} spam)")

    return corpus
