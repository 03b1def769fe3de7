import numpy as np
import pytest

from spamlab.metrics import as_binary, class_metrics, confusion, mann_whitney_auc, roc_auc
from spamlab.records import ConfusionMatrix
from spamlab.utils.errors import EmptyInputError, LengthMismatchError, SingleClassTruthError


def random_instance(rng):
    n = int(rng.integers(2, 51))
    y = rng.integers(0, 2, size=n)
    y[0], y[1] = 0, 1
    # few distinct values so ties are common
    scores = rng.integers(0, int(rng.integers(2, 12)), size=n).astype(np.float64)
    return y, scores


class TestConfusion:
    def test_counts(self):
        cm = confusion([1, 1, 0, 0, 1], [1, 0, 0, 1, 1])
        assert (cm.tp, cm.fp, cm.fn, cm.tn) == (2, 1, 1, 1)
        assert cm.total == 5

    def test_string_labels(self):
        assert confusion(["spam", "ham"], ["spam", "spam"]) == ConfusionMatrix(tp=1, fp=1, fn=0, tn=0)

    def test_unknown_string_label(self):
        with pytest.raises(ValueError):
            as_binary(["spam", "eggs"])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            confusion([1, 0], [1])

    def test_empty(self):
        with pytest.raises(EmptyInputError):
            confusion([], [])


class TestClassMetrics:
    def test_worked_example(self):
        m = class_metrics(ConfusionMatrix(tp=3, fp=1, fn=1, tn=5))
        assert (m.precision, m.recall, m.f1) == (0.75, 0.75, 0.75)
        assert m.accuracy == 0.8

    def test_ham_is_the_swapped_view(self):
        cm = ConfusionMatrix(tp=3, fp=1, fn=2, tn=6)
        ham = class_metrics(cm, positive="ham")
        assert ham.precision == pytest.approx(6 / 8)
        assert ham.recall == pytest.approx(6 / 7)
        assert ham.accuracy == class_metrics(cm).accuracy

    def test_no_predicted_spam(self):
        m = class_metrics(ConfusionMatrix(tp=0, fp=0, fn=4, tn=6))
        assert m.precision == 0.0
        assert m.recall == 0.0
        assert m.f1 == 0.0

    def test_scale_free(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            cm = ConfusionMatrix(*(int(v) for v in rng.integers(0, 20, size=4)))
            if cm.total == 0:
                continue
            base, scaled = class_metrics(cm), class_metrics(cm.scaled(7))
            for key, value in base.to_dict().items():
                assert scaled.to_dict()[key] == pytest.approx(value, abs=1e-12)

    def test_bounds(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            y_true = rng.integers(0, 2, size=30)
            y_pred = rng.integers(0, 2, size=30)
            for positive in ("spam", "ham"):
                m = class_metrics(confusion(y_true, y_pred), positive=positive)
                assert all(0.0 <= v <= 1.0 for v in m.to_dict().values())
                assert m.f1 <= max(m.precision, m.recall) + 1e-12

    def test_empty_matrix(self):
        with pytest.raises(EmptyInputError):
            class_metrics(ConfusionMatrix(0, 0, 0, 0))


class TestRoc:
    def test_perfect_ordering(self):
        roc = roc_auc([0, 0, 1, 1], [0.1, 0.2, 0.8, 0.9])
        assert roc.auc == 1.0
        assert roc.points[0] == (0.0, 0.0)
        assert roc.points[-1] == (1.0, 1.0)

    def test_identical_scores(self):
        roc = roc_auc([0, 1, 0, 1], [0.5] * 4)
        assert roc.points == ((0.0, 0.0), (1.0, 1.0))
        assert roc.auc == 0.5

    def test_reversed_ordering(self):
        assert roc_auc([1, 1, 0, 0], [0.1, 0.2, 0.8, 0.9]).auc == 0.0

    def test_points_are_monotone(self):
        y, scores = random_instance(np.random.default_rng(3))
        roc = roc_auc(y, scores)
        assert np.all(np.diff(roc.fpr) >= 0)
        assert np.all(np.diff(roc.tpr) >= 0)
        assert len(roc.points) == np.unique(scores).size + 1

    def test_matches_pair_statistic(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            y, scores = random_instance(rng)
            assert abs(roc_auc(y, scores).auc - mann_whitney_auc(y, scores)) <= 1e-12

    def test_negated_scores(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            y, scores = random_instance(rng)
            assert abs(roc_auc(y, -scores).auc - (1.0 - roc_auc(y, scores).auc)) <= 1e-12

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            y, scores = random_instance(rng)
            auc = roc_auc(y, scores).auc
            assert roc_auc(y, np.exp(scores)).auc == auc
            assert roc_auc(y, 3.0 * scores - 1.0).auc == auc

    def test_single_class_truth(self):
        with pytest.raises(SingleClassTruthError):
            roc_auc([1, 1, 1], [0.1, 0.2, 0.3])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            roc_auc([0, 1], [0.5])
