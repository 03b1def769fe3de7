import itertools
from fractions import Fraction

import numpy as np
import pytest
import scipy.sparse as sp

from spamlab.models import train_nb
from spamlab.utils.errors import DimensionMismatchError, NegativeFeatureError, SingleClassError

VOCAB = 3


def bags(max_len):
    """Every count vector over VOCAB terms with total length 0..max_len."""
    out = []
    for length in range(max_len + 1):
        for combo in itertools.combinations_with_replacement(range(VOCAB), length):
            out.append(tuple(int(v) for v in np.bincount(combo, minlength=VOCAB)) if combo else (0,) * VOCAB)
    return out


def brute_force_posterior(train_docs, train_labels, query, alpha=1):
    """P(spam | query) by direct products of Laplace-smoothed fractions."""
    joint = {}
    for c in (0, 1):
        docs = [d for d, y in zip(train_docs, train_labels) if y == c]
        prior = Fraction(len(docs), len(train_docs))
        counts = [sum(d[t] for d in docs) for t in range(VOCAB)]
        total = sum(counts)
        likelihood = Fraction(1)
        for t in range(VOCAB):
            p = Fraction(counts[t] + alpha, total + alpha * VOCAB)
            likelihood *= p ** int(query[t])
        joint[c] = prior * likelihood
    return float(joint[1] / (joint[0] + joint[1]))


class TestMultinomialNb:
    def test_prior_from_class_counts(self):
        X = np.ones((500, 2))
        y = np.zeros(500)
        y[:100] = 1
        model = train_nb(X, y, variant="multinomial")
        assert np.exp(model.log_priors[1]) == pytest.approx(0.2, abs=1e-12)

    def test_laplace_smoothing(self):
        # spam class holds "hello" twice and never "world"
        X = np.array([[2.0, 0.0], [0.0, 3.0]])
        model = train_nb(X, [1, 0], variant="multinomial", alpha=1.0)
        np.testing.assert_allclose(np.exp(model.feature_log_prob[1]), [0.75, 0.25], atol=1e-12)

    def test_score_factorizes_over_terms(self):
        X = np.array([[2.0, 1.0], [1.0, 3.0], [0.0, 1.0]])
        y = [1, 0, 0]
        model = train_nb(X, y, variant="multinomial")
        p = np.exp(model.feature_log_prob)
        prior = np.exp(model.log_priors)
        joint = prior * p[:, 0] * p[:, 1]
        assert model.score(np.array([[1.0, 1.0]]))[0] == pytest.approx(joint[1] / joint.sum(), abs=1e-12)

    def test_exhaustive_small_vocabulary(self):
        """Matches brute-force Bayes for all two-document training sets and all short queries."""
        docs = [b for b in bags(3) if sum(b) > 0]
        queries = np.array(bags(3), dtype=np.float64)
        for spam_doc, ham_doc in itertools.product(docs, docs):
            model = train_nb(np.array([spam_doc, ham_doc], dtype=np.float64), [1, 0], variant="multinomial")
            scores = model.score(queries)
            expected = [brute_force_posterior([spam_doc, ham_doc], [1, 0], q) for q in queries.astype(int)]
            np.testing.assert_allclose(scores, expected, rtol=0, atol=1e-10)

    def test_posterior_sums_to_one(self):
        rng = np.random.default_rng(42)
        X = rng.integers(0, 4, size=(40, 6)).astype(np.float64)
        y = rng.integers(0, 2, size=40)
        y[:2] = [0, 1]
        model = train_nb(sp.csr_matrix(X), y)
        assert model.variant == "multinomial"
        np.testing.assert_allclose(model.posterior(X).sum(axis=1), 1.0, atol=1e-12)
        np.testing.assert_allclose(np.exp(model.feature_log_prob).sum(axis=1), 1.0, atol=1e-9)

    def test_spammier_term_never_lowers_score(self):
        rng = np.random.default_rng(7)
        X = rng.integers(0, 5, size=(30, 4)).astype(np.float64)
        y = np.array([0, 1] * 15)
        model = train_nb(X, y, variant="multinomial")
        ratio = model.feature_log_prob[1] - model.feature_log_prob[0]
        term = int(np.argmax(ratio))
        assert ratio[term] > 0

        query = rng.integers(0, 3, size=(10, 4)).astype(np.float64)
        bumped = query.copy()
        bumped[:, term] += 1
        assert np.all(model.score(bumped) >= model.score(query))

    def test_negative_features_rejected(self):
        with pytest.raises(NegativeFeatureError):
            train_nb(np.array([[1.0, -1.0], [0.0, 2.0]]), [0, 1], variant="multinomial")

    def test_single_class_rejected(self):
        with pytest.raises(SingleClassError):
            train_nb(np.ones((3, 2)), [1, 1, 1], variant="multinomial")


class TestGaussianNb:
    def test_dense_input_defaults_to_gaussian(self):
        model = train_nb(np.array([[-1.0], [-1.2], [1.0], [1.2]]), [0, 0, 1, 1])
        assert model.variant == "gaussian"

    def test_equidistant_point_scores_half(self):
        X = np.array([[-1.0, 0.5], [-2.0, -0.5], [1.0, 0.5], [2.0, -0.5]])
        model = train_nb(X, [0, 0, 1, 1])
        assert model.score(np.array([[0.0, 0.0]]))[0] == pytest.approx(0.5, abs=1e-12)

    def test_variance_floor(self):
        X = np.array([[1.0, 0.0], [1.0, 1.0], [2.0, 0.0], [2.0, 1.0]])
        model = train_nb(X, [0, 0, 1, 1], var_floor=1e-6)
        assert np.all(model.variances >= 1e-6)
        assert np.all(np.isfinite(model.score(X)))

    def test_column_count_checked(self):
        model = train_nb(np.array([[0.0], [1.0], [2.0], [3.0]]), [0, 0, 1, 1])
        with pytest.raises(DimensionMismatchError):
            model.score(np.zeros((1, 2)))
