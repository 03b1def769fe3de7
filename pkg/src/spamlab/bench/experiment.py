import threading
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..corpus import load_csv, stratified_split
from ..features import Vocabulary, dump_vocabulary, featurize_split
from ..metrics import class_metrics, confusion, roc_auc
from ..models import Model, ModelRegistry, SvmModel, save_model
from ..numeric import FeatureMatrix, PcaModel, pca_fit, pca_transform, scree_data
from ..records import Corpus, DataSplit, GridReport, RunReport
from ..textprep import StopwordList, TokenizedDoc, preprocess_all
from ..utils import log
from ..utils.const import (
    CLASSIFIER_NAMES,
    FEATURE_NAMES,
    GRID_ORDER,
    HAM,
    SPAM,
    FeatureMethod,
)
from ..utils.errors import PipelineError, SingleClassTruthError, SpamLabError
from .config import ExperimentConfig

__all__ = [
    "PreparedData",
    "FeatureSet",
    "stage",
    "prepare",
    "featurize",
    "run_experiment",
    "run_grid",
]


@contextmanager
def stage(name: str):
    """Re-raise library failures as PipelineError tagged with the stage name."""
    try:
        yield
    except PipelineError:
        raise
    except (SpamLabError, ValueError, ArithmeticError, OSError) as e:
        raise PipelineError(name, e) from e


@dataclass(frozen=True)
class PreparedData:
    corpus: Corpus
    docs: Tuple[TokenizedDoc, ...]
    split: DataSplit
    labels: np.ndarray

    @property
    def train_docs(self) -> List[TokenizedDoc]:
        return [self.docs[i] for i in self.split.train_indices]

    @property
    def test_docs(self) -> List[TokenizedDoc]:
        return [self.docs[i] for i in self.split.test_indices]

    @property
    def y_train(self) -> np.ndarray:
        return self.labels[list(self.split.train_indices)]

    @property
    def y_test(self) -> np.ndarray:
        return self.labels[list(self.split.test_indices)]


@dataclass(frozen=True, eq=False)
class FeatureSet:
    method: FeatureMethod
    train: FeatureMatrix
    test: FeatureMatrix
    vocabulary: Vocabulary
    pca: Optional[PcaModel] = None

    @property
    def scree(self) -> Tuple[Tuple[int, float], ...]:
        return tuple(scree_data(self.pca)) if self.pca is not None else ()


def prepare(config: ExperimentConfig) -> PreparedData:
    """load -> preprocess -> split; shared by every cell of a grid."""
    with stage("load"):
        corpus = load_csv(config.data_path)
    with stage("preprocess"):
        stops = StopwordList.load(config.stopwords_path)
        docs = tuple(preprocess_all(corpus.texts, stops))
    with stage("split"):
        split = stratified_split(corpus, config.split_spec())

    train_sizes, test_sizes = split.class_sizes(corpus.labels())
    log.info("Split", f"train {train_sizes} / test {test_sizes}")
    return PreparedData(corpus=corpus, docs=docs, split=split, labels=corpus.labels())


def featurize(
    prepared: PreparedData, method: FeatureMethod, pca_k: int, dump_vocab: Optional[str] = None
) -> FeatureSet:
    """Vocabulary, idf and PCA are fitted on the training rows only."""
    with stage("featurize"):
        train, test, vocab = featurize_split(prepared.train_docs, prepared.test_docs, method)
        if dump_vocab:
            dump_vocabulary(vocab, dump_vocab)
    log.info("Vocabulary", f"{len(vocab)} terms ({method.value})")

    if method != FeatureMethod.TFIDF_PCA:
        return FeatureSet(method, train, test, vocab)

    with stage("pca"):
        pca = pca_fit(train, pca_k)
        train_z = pca_transform(pca, train)
        test_z = pca_transform(pca, test) if test.shape[0] else np.zeros((0, pca.k))
    return FeatureSet(method, train_z, test_z, vocab, pca)


def _notes(prepared: PreparedData, features: FeatureSet, model: Optional[Model]) -> Tuple[str, ...]:
    notes: List[str] = []
    for name in prepared.split.degenerate_classes:
        notes.append(f"degenerate_split:{name}")
    if features.pca is not None and features.pca.rank_deficient:
        notes.append(f"rank_too_low:{features.pca.k}/{features.pca.requested_k}")
    if isinstance(model, SvmModel) and not model.converged:
        notes.append("svm_no_convergence")
    return tuple(notes)


def run_experiment(
    config: ExperimentConfig,
    prepared: Optional[PreparedData] = None,
    features: Optional[FeatureSet] = None,
) -> RunReport:
    """
    load -> preprocess -> split -> featurize -> [pca] -> train -> score ->
    metrics. Deterministic in the config; only wall_clock_seconds varies.
    """

    start = time.perf_counter()
    config.validate()
    if prepared is None:
        prepared = prepare(config)
    if features is None:
        features = featurize(prepared, config.features, config.pca_k, config.dump_vocab)

    hyper = config.model_hyperparameters()
    with stage("train"):
        model = ModelRegistry.train(config.classifier, features.train, prepared.y_train, **hyper)
    if config.save_model:
        with stage("save"):
            save_model(model, config.save_model)

    train_sizes, test_sizes = prepared.split.class_sizes(prepared.labels)
    notes = list(_notes(prepared, features, model))
    common = dict(
        cell=config.cell,
        classifier=config.classifier.value,
        features=config.features.value,
        config=config.echo(),
        seed=config.effective_model_seed,
        vocabulary_size=len(features.vocabulary),
        train_sizes=train_sizes,
        test_sizes=test_sizes,
        scree=features.scree,
    )

    y_test = prepared.y_test
    if y_test.size == 0:
        notes.append("empty_test_split")
        return RunReport(
            status="untested",
            notes=tuple(notes),
            wall_clock_seconds=time.perf_counter() - start,
            **common,
        )

    with stage("score"):
        scores = model.score(features.test)
        threshold = model.default_threshold if config.threshold is None else config.threshold
        predictions = (scores >= threshold).astype(np.int64)

    with stage("evaluate"):
        cm = confusion(y_test, predictions)
        metrics = {HAM: class_metrics(cm, HAM), SPAM: class_metrics(cm, SPAM)}
        try:
            roc = roc_auc(y_test, scores)
        except SingleClassTruthError:
            roc = None
            notes.append("roc_unavailable")

    report = RunReport(
        metrics=metrics,
        confusion=cm,
        roc=roc,
        notes=tuple(notes),
        wall_clock_seconds=time.perf_counter() - start,
        **common,
    )
    auc = "n/a" if report.auc is None else f"{report.auc:.4f}"
    log.info(
        f"{CLASSIFIER_NAMES[config.classifier]} / {FEATURE_NAMES[config.features]}",
        f"accuracy={report.accuracy:.4f} auc={auc}",
        color="green",
    )
    return report


def _failed(config: ExperimentConfig, error: PipelineError) -> RunReport:
    log.error(f"Cell {config.cell} failed: {error}")
    return RunReport(
        cell=config.cell,
        classifier=config.classifier.value,
        features=config.features.value,
        config=config.echo(),
        seed=config.effective_model_seed,
        status="failed",
        error=str(error),
    )


def run_grid(base: ExperimentConfig, jobs: int = 1, prepared: Optional[PreparedData] = None) -> GridReport:
    """
    The six classifiers on both feature sets, in table order. Every cell
    shares the split; cell i trains with seed base.seed + i. A failing cell
    is recorded and the rest still run.
    """

    base.validate()
    if prepared is None:
        prepared = prepare(base)

    feature_cache: Dict[FeatureMethod, object] = {}
    lock = threading.Lock()

    def features_for(method: FeatureMethod):
        with lock:
            if method not in feature_cache:
                try:
                    feature_cache[method] = featurize(
                        prepared,
                        method,
                        base.pca_k,
                        base.dump_vocab if method == FeatureMethod.BOW else None,
                    )
                except PipelineError as e:
                    feature_cache[method] = e
            return feature_cache[method]

    def run_cell(index: int) -> RunReport:
        kind, method = GRID_ORDER[index]
        config = base.for_cell(kind, method, base.seed + index)
        features = features_for(method)
        if isinstance(features, PipelineError):
            return _failed(config, features)
        try:
            return run_experiment(config, prepared, features)
        except PipelineError as e:
            return _failed(config, e)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(run_cell, range(len(GRID_ORDER))))
    else:
        cells = [run_cell(i) for i in range(len(GRID_ORDER))]

    tfidf = feature_cache.get(FeatureMethod.TFIDF_PCA)
    return GridReport(
        cells=tuple(cells),
        model_names=tuple(CLASSIFIER_NAMES[kind] for kind, _ in GRID_ORDER),
        feature_names=tuple(FEATURE_NAMES[method] for _, method in GRID_ORDER),
        scree=tfidf.scree if isinstance(tfidf, FeatureSet) else (),
    )
