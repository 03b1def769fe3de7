import numpy as np
import pytest
import scipy.sparse as sp

from spamlab.models import best_split, gini, train_dt
from spamlab.models.decision_tree import LEAF

XOR_X = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
XOR_Y = np.array([0, 1, 1, 0])


def internal_nodes(model):
    return np.flatnonzero(model.feature != LEAF)


class TestGini:
    def test_pure_node(self):
        assert gini(10, 0) == 0.0

    def test_balanced_node(self):
        assert gini(5, 5) == 0.5

    def test_empty_node(self):
        assert gini(0, 0) == 0.0


class TestBestSplit:
    def test_threshold_is_midpoint(self):
        X = np.array([[1.0], [2.0], [5.0], [6.0]])
        feature, threshold, score = best_split(X, np.array([0, 0, 1, 1]))
        assert (feature, threshold, score) == (0, 3.5, 0.0)

    def test_constant_features_have_no_split(self):
        feature, _, score = best_split(np.ones((4, 2)), np.array([0, 1, 0, 1]))
        assert feature == LEAF
        assert score == np.inf

    def test_ties_go_to_lowest_feature(self):
        X = np.array([[0.0, 0.0], [1.0, 1.0]])
        assert best_split(X, np.array([0, 1]))[0] == 0

    def test_sparse_scan_matches_dense(self):
        rng = np.random.default_rng(4)
        X = rng.integers(0, 3, size=(30, 6)).astype(np.float64) * (rng.random((30, 6)) < 0.4)
        y = rng.integers(0, 2, size=30)
        dense = best_split(X, y)
        sparse = best_split(sp.csr_matrix(X), y)
        assert dense[0] == sparse[0]
        assert dense[1] == pytest.approx(sparse[1])
        assert dense[2] == pytest.approx(sparse[2], abs=1e-15)


class TestDecisionTree:
    def test_pure_training_set_is_a_leaf(self):
        model = train_dt(np.random.default_rng(0).random((6, 3)), [1] * 6)
        assert model.n_nodes == 1
        np.testing.assert_array_equal(model.score(np.zeros((2, 3))), [1.0, 1.0])

    def test_xor_needs_zero_gain_split(self):
        strict = train_dt(XOR_X, XOR_Y, max_depth=2)
        assert strict.n_nodes == 1
        np.testing.assert_allclose(strict.score(XOR_X), 0.5)

        model = train_dt(XOR_X, XOR_Y, max_depth=2, require_gain=False)
        np.testing.assert_array_equal(model.predict(XOR_X), XOR_Y)
        assert model.depth() == 2

    def test_unlimited_depth_fits_consistent_data(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            n = int(rng.integers(2, 40))
            d = int(rng.integers(1, 5))
            X = rng.standard_normal((n, d))
            y = rng.integers(0, 2, size=n)
            model = train_dt(X, y, max_depth=None, require_gain=False)
            np.testing.assert_array_equal(model.predict(X), y)

    def test_every_split_lowers_gini(self):
        rng = np.random.default_rng(7)
        X = rng.standard_normal((80, 4))
        y = (X[:, 0] + 0.5 * X[:, 1] ** 2 + 0.3 * rng.standard_normal(80) > 0.2).astype(int)
        model = train_dt(X, y, max_depth=None)
        assert internal_nodes(model).size > 0
        for node in internal_nodes(model):
            left, right = model.left[node], model.right[node]
            parent = gini(model.n_ham[node], model.n_spam[node])
            n = model.n_ham[node] + model.n_spam[node]
            children = sum(
                (model.n_ham[c] + model.n_spam[c]) / n * gini(model.n_ham[c], model.n_spam[c])
                for c in (left, right)
            )
            assert children < parent
            assert model.n_ham[left] + model.n_ham[right] == model.n_ham[node]

    def test_depth_limit(self):
        rng = np.random.default_rng(8)
        X = rng.standard_normal((60, 3))
        y = rng.integers(0, 2, size=60)
        assert train_dt(X, y, max_depth=3, require_gain=False).depth() <= 3

    def test_min_samples_split(self):
        model = train_dt(XOR_X, XOR_Y, min_samples_split=5, require_gain=False)
        assert model.n_nodes == 1

    def test_nodes_are_preorder(self):
        model = train_dt(XOR_X, XOR_Y, require_gain=False)
        for node in internal_nodes(model):
            assert model.left[node] == node + 1
            assert model.right[node] > model.left[node]

    def test_sparse_and_dense_trees_agree(self):
        rng = np.random.default_rng(9)
        X = rng.integers(0, 4, size=(50, 8)).astype(np.float64) * (rng.random((50, 8)) < 0.3)
        y = rng.integers(0, 2, size=50)
        dense = train_dt(X, y, max_depth=6)
        sparse = train_dt(sp.csr_matrix(X), y, max_depth=6)
        np.testing.assert_array_equal(dense.feature, sparse.feature)
        np.testing.assert_allclose(dense.threshold, sparse.threshold)
        np.testing.assert_array_equal(dense.score(X), sparse.score(sp.csr_matrix(X)))

    def test_leaf_scores_are_spam_fractions(self):
        X = np.array([[0.0], [0.0], [0.0], [1.0]])
        model = train_dt(X, [1, 0, 0, 1])
        np.testing.assert_allclose(model.score(np.array([[0.0], [1.0]])), [1 / 3, 1.0])
