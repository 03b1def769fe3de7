import json

import numpy as np
import pytest
import scipy.sparse as sp

from spamlab.models import (
    load_model,
    model_from_json,
    model_to_json,
    save_model,
    train_dnn,
    train_dt,
    train_knn,
    train_lda,
    train_nb,
    train_svm,
)
from spamlab.utils.errors import DataError, DataIOError


@pytest.fixture
def toy():
    rng = np.random.default_rng(42)
    counts = rng.integers(0, 4, size=(30, 6)).astype(np.float64)
    y = np.array([0, 1] * 15)
    counts[y == 1, 0] += 3
    return sp.csr_matrix(counts), counts, y


def trained_models(toy):
    sparse, dense, y = toy
    return [
        (train_nb(sparse, y), sparse),
        (train_nb(dense, y, variant="gaussian"), dense),
        (train_knn(sparse, y, k=3), sparse),
        (train_svm(sparse, y, seed=1), sparse),
        (train_lda(dense, y), dense),
        (train_dt(sparse, y, max_depth=None), sparse),
        (train_dnn(dense, y, hidden_sizes=(4, 3), epochs=2, seed=5), dense),
    ]


class TestPersistence:
    def test_scores_survive_the_round_trip(self, toy, tmp_path):
        for i, (model, X) in enumerate(trained_models(toy)):
            path = save_model(model, tmp_path / f"model_{i}.json")
            restored = load_model(path)
            assert restored.kind == model.kind
            assert restored.hyperparameters == model.hyperparameters
            np.testing.assert_allclose(restored.score(X), model.score(X), rtol=0, atol=1e-12)

    def test_document_layout(self, toy):
        model = train_lda(toy[1], toy[2])
        document = json.loads(model_to_json(model))
        assert document["schema_version"] == 1
        assert document["model_kind"] == "lda"
        assert document["n_features"] == 6
        assert set(document) == {"schema_version", "model_kind", "n_features", "hyperparameters", "parameters"}

    def test_repeatable_serialisation(self, toy):
        model = train_dt(toy[0], toy[2])
        assert model_to_json(model) == model_to_json(model_from_json(model_to_json(model)))

    def test_unknown_schema_version(self, toy):
        document = json.loads(model_to_json(train_lda(toy[1], toy[2])))
        document["schema_version"] = 99
        with pytest.raises(DataError):
            model_from_json(json.dumps(document))

    def test_unknown_kind(self, toy):
        document = json.loads(model_to_json(train_lda(toy[1], toy[2])))
        document["model_kind"] = "forest"
        with pytest.raises(DataError):
            model_from_json(json.dumps(document))

    def test_not_json(self):
        with pytest.raises(DataError):
            model_from_json("{not json")

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataIOError):
            load_model(tmp_path / "missing.json")
