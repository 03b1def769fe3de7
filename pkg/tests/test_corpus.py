import numpy as np
import pytest

from spamlab.corpus import load_csv, stratified_split, train_count
from spamlab.records import Corpus, RawMessage, SplitSpec
from spamlab.utils.errors import (
    BadLabelError,
    ConfigError,
    DataIOError,
    EmptyCorpusError,
    MissingColumnError,
)


def _corpus(n_ham, n_spam):
    messages = [RawMessage("ham", f"h{i}") for i in range(n_ham)]
    messages += [RawMessage("spam", f"s{i}") for i in range(n_spam)]
    return Corpus.from_messages(messages)


class TestLoadCsv:
    def test_counts_match_rows(self, make_corpus):
        path = make_corpus(n_ham=30, n_spam=12)
        corpus = load_csv(path)
        assert len(corpus) == 42
        assert corpus.n_ham == 30
        assert corpus.n_spam == 12
        assert corpus.labels().sum() == 12

    def test_header_only_gives_empty_corpus(self, make_corpus):
        corpus = load_csv(make_corpus(rows=[]))
        assert len(corpus) == 0
        assert corpus.n_ham == corpus.n_spam == 0

    def test_label_is_trimmed_and_lowercased(self, make_corpus):
        corpus = load_csv(make_corpus(rows=[("  SPAM ", "win cash"), ("Ham", "see you")]))
        assert [m.label for m in corpus.messages] == ["spam", "ham"]

    def test_quoted_fields_keep_commas_and_quotes(self, make_corpus):
        text = 'Call me, "now", ok'
        corpus = load_csv(make_corpus(rows=[("ham", text)]))
        assert corpus.messages[0].text == text

    def test_columns_in_any_order_and_case(self, make_corpus):
        path = make_corpus(rows=[("hi there", "ham", "x")], header=("MESSAGE", "category", "extra"))
        corpus = load_csv(path)
        assert corpus.messages[0] == RawMessage("ham", "hi there")

    def test_missing_column(self, make_corpus):
        with pytest.raises(MissingColumnError):
            load_csv(make_corpus(rows=[("ham",)], header=("Category",)))

    def test_bad_label_reports_row(self, make_corpus):
        with pytest.raises(BadLabelError) as info:
            load_csv(make_corpus(rows=[("ham", "a"), ("eggs", "b")]))
        assert info.value.row == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataIOError):
            load_csv(str(tmp_path / "nope.csv"))


class TestStratifiedSplit:
    def test_symmetric_half_split(self):
        corpus = _corpus(10, 10)
        split = stratified_split(corpus, SplitSpec(train_fraction=0.5, seed=1))
        train, _ = split.class_sizes(corpus.labels())
        assert train == {"ham": 5, "spam": 5}

    def test_full_fraction_leaves_test_empty(self):
        split = stratified_split(_corpus(4, 3), SplitSpec(train_fraction=1.0))
        assert split.test_indices == ()
        assert not split.degenerate

    def test_same_seed_same_split(self):
        corpus = _corpus(37, 11)
        spec = SplitSpec(train_fraction=0.8, seed=9)
        assert stratified_split(corpus, spec) == stratified_split(corpus, spec)

    def test_partition_and_stratification_on_random_corpora(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            n_ham, n_spam = int(rng.integers(1, 100)), int(rng.integers(1, 100))
            f = float(rng.uniform(0.05, 1.0))
            corpus = _corpus(n_ham, n_spam)
            split = stratified_split(corpus, SplitSpec(train_fraction=f, seed=int(rng.integers(1000))))

            train, test = set(split.train_indices), set(split.test_indices)
            assert not train & test
            assert train | test == set(range(len(corpus)))
            assert list(split.train_indices) == sorted(split.train_indices)

            sizes, _ = split.class_sizes(corpus.labels())
            assert sizes["ham"] == train_count(f, n_ham)
            assert sizes["spam"] == train_count(f, n_spam)

    def test_rounding_is_half_up(self):
        assert train_count(0.5, 5) == 3
        assert train_count(0.25, 10) == 3
        assert train_count(0.8, 747) == 598

    def test_degenerate_class_is_flagged(self):
        split = stratified_split(_corpus(10, 1), SplitSpec(train_fraction=0.8))
        assert split.degenerate_classes == ("spam",)

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpusError):
            stratified_split(_corpus(0, 0), SplitSpec())

    def test_stratified_needs_both_classes(self):
        with pytest.raises(EmptyCorpusError):
            stratified_split(_corpus(5, 0), SplitSpec())

    @pytest.mark.parametrize("fraction", [0.0, -0.1, 1.5])
    def test_fraction_out_of_range(self, fraction):
        with pytest.raises(ConfigError):
            SplitSpec(train_fraction=fraction)

    def test_negative_seed_is_a_valid_seed(self):
        corpus = _corpus(12, 6)
        split = stratified_split(corpus, SplitSpec(train_fraction=0.5, seed=-1))
        train, _ = split.class_sizes(corpus.labels())
        assert train == {"ham": 6, "spam": 3}
        assert split == stratified_split(corpus, SplitSpec(train_fraction=0.5, seed=-1))
        assert split == stratified_split(corpus, SplitSpec(train_fraction=0.5, seed=2**64 - 1))

    @pytest.mark.parametrize("seed", [-(2**63) - 1, 2**64])
    def test_seed_beyond_64_bits(self, seed):
        with pytest.raises(ConfigError):
            SplitSpec(seed=seed)
