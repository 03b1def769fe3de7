from enum import Enum

EPSILON = 1e-12
SYMMETRY_TOL = 1e-10
JACOBI_TOL = 1e-10
JACOBI_MAX_SWEEPS = 100
JACOBI_MAX_DIM = 128

HAM = "ham"
SPAM = "spam"
LABELS = (HAM, SPAM)

DEFAULT_TRAIN_FRACTION = 0.8
DEFAULT_SEED = 42
DEFAULT_PCA_K = 10
DEFAULT_OUT_DIR = "reports"

REPORT_SCHEMA_VERSION = 1
MODEL_SCHEMA_VERSION = 1


class FeatureMethod(Enum):
    BOW = "bow"
    TFIDF = "tfidf"
    TFIDF_PCA = "tfidf_pca"


class ClassifierKind(Enum):
    NB = "nb"
    KNN = "knn"
    SVM = "svm"
    LDA = "lda"
    DT = "dt"
    DNN = "dnn"


class ModelPreset(Enum):
    NB = {
        "variant": None,
        "alpha": 1.0,
        "var_floor": 1e-9,
    }
    KNN = {
        "k": 5,
        "similarity": "cosine",
    }
    SVM = {
        "C": 1.0,
        "tol": 1e-4,
        "max_epochs": 1000,
    }
    LDA = {
        "ridge_scale": 1e-6,
    }
    DT = {
        "max_depth": 20,
        "min_samples_split": 2,
    }
    DNN = {
        "hidden_sizes": (256, 128, 64, 32, 16),
        "dropout": 0.3,
        "learning_rate": 0.01,
        "momentum": 0.9,
        "batch_size": 32,
        "epochs": 30,
    }

    @classmethod
    def of(cls, kind: ClassifierKind) -> dict:
        return dict(cls[kind.name].value)


# benchmark row order: each classifier on BoW, then on TF-IDF
GRID_ORDER = (
    (ClassifierKind.NB, FeatureMethod.BOW),
    (ClassifierKind.NB, FeatureMethod.TFIDF_PCA),
    (ClassifierKind.KNN, FeatureMethod.BOW),
    (ClassifierKind.KNN, FeatureMethod.TFIDF_PCA),
    (ClassifierKind.SVM, FeatureMethod.BOW),
    (ClassifierKind.SVM, FeatureMethod.TFIDF_PCA),
    (ClassifierKind.LDA, FeatureMethod.BOW),
    (ClassifierKind.LDA, FeatureMethod.TFIDF_PCA),
    (ClassifierKind.DT, FeatureMethod.BOW),
    (ClassifierKind.DT, FeatureMethod.TFIDF_PCA),
    (ClassifierKind.DNN, FeatureMethod.BOW),
    (ClassifierKind.DNN, FeatureMethod.TFIDF_PCA),
)

CLASSIFIER_NAMES = {
    ClassifierKind.NB: "Naive Bayes",
    ClassifierKind.KNN: "K-Nearest Neighbors",
    ClassifierKind.SVM: "Support Vector Machines",
    ClassifierKind.LDA: "Linear Discriminant Analysis",
    ClassifierKind.DT: "Decision Trees",
    ClassifierKind.DNN: "Deep Neural Network",
}

FEATURE_NAMES = {
    FeatureMethod.BOW: "Bag-of-Words",
    FeatureMethod.TFIDF: "TF-IDF",
    FeatureMethod.TFIDF_PCA: "TF-IDF",
}
