import csv
import os

import numpy as np
import pytest

from spamlab.utils import log

HAM_WORDS = ["ok", "see", "you", "later", "home", "lunch", "call", "tomorrow", "love", "meet", "dinner", "sorry"]
SPAM_WORDS = ["free", "win", "prize", "claim", "cash", "urgent", "txt", "mobile", "award", "offer", "reply", "stop"]


@pytest.fixture(autouse=True)
def quiet():
    log.set_verbose(False)
    yield
    log.set_verbose(True)


def synthetic_messages(n_ham=60, n_spam=20, seed=7):
    """Short ham/spam messages drawn from two overlapping word pools."""
    rng = np.random.default_rng(seed)
    rows = []
    for label, pool, other in (("ham", HAM_WORDS, SPAM_WORDS), ("spam", SPAM_WORDS, HAM_WORDS)):
        n = n_ham if label == "ham" else n_spam
        for _ in range(n):
            words = list(rng.choice(pool, size=rng.integers(3, 8)))
            if rng.random() < 0.3:
                words.append(str(rng.choice(other)))
            if label == "spam" and rng.random() < 0.5:
                words.append(str(rng.integers(100, 10000)))
            rows.append((label, " ".join(words).capitalize() + "!"))
    order = rng.permutation(len(rows))
    return [rows[i] for i in order]


def write_corpus(path, rows, header=("Category", "Message")):
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)
    return str(path)


@pytest.fixture
def corpus_csv(tmp_path):
    return write_corpus(tmp_path / "sms.csv", synthetic_messages())


@pytest.fixture
def dataset_path():
    path = os.environ.get("SPAMLAB_DATA")
    if not path or not os.path.isfile(path):
        pytest.skip("SPAMLAB_DATA does not point at the SMS corpus CSV")
    return path


@pytest.fixture
def make_corpus(tmp_path):
    """Factory writing a CSV under tmp_path; rows default to the synthetic corpus."""

    def make(rows=None, name="sms.csv", header=("Category", "Message"), **kwargs):
        rows = synthetic_messages(**kwargs) if rows is None else rows
        return write_corpus(tmp_path / name, rows, header)

    return make
