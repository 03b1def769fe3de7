import json
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
import scipy.sparse as sp

from ..utils.const import MODEL_SCHEMA_VERSION, ClassifierKind
from ..utils.errors import DataError, DataIOError
from ..utils.loader import write_text
from .base import Model, ModelRegistry

__all__ = ["model_to_json", "model_from_json", "save_model", "load_model"]


def _encode(value: Any) -> Any:
    if sp.issparse(value):
        csr = value.tocsr()
        return {
            "__csr__": {
                "shape": list(csr.shape),
                "data": csr.data.tolist(),
                "indices": csr.indices.tolist(),
                "indptr": csr.indptr.tolist(),
            }
        }
    if isinstance(value, np.ndarray):
        return {"__ndarray__": value.tolist(), "dtype": value.dtype.str}
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def _decode(value: Any) -> Any:
    if isinstance(value, dict):
        if "__ndarray__" in value:
            return np.asarray(value["__ndarray__"], dtype=np.dtype(value["dtype"]))
        if "__csr__" in value:
            blob = value["__csr__"]
            return sp.csr_matrix(
                (
                    np.asarray(blob["data"], dtype=np.float64),
                    np.asarray(blob["indices"], dtype=np.int32),
                    np.asarray(blob["indptr"], dtype=np.int32),
                ),
                shape=tuple(blob["shape"]),
            )
        return {k: _decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_decode(v) for v in value]
    return value


def model_to_json(model: Model) -> str:
    document = {
        "schema_version": MODEL_SCHEMA_VERSION,
        "model_kind": model.kind.value,
        "n_features": model.n_features,
        "hyperparameters": _encode(model.hyperparameters),
        "parameters": _encode(model.parameters()),
    }
    return json.dumps(document, sort_keys=True)


def model_from_json(text: str) -> Model:
    try:
        document: Dict[str, Any] = json.loads(text)
    except json.JSONDecodeError as e:
        raise DataError(f"Model document is not valid JSON: {e}") from e

    version = document.get("schema_version")
    if version != MODEL_SCHEMA_VERSION:
        raise DataError(f"Unsupported model schema version: {version}")
    try:
        kind = ClassifierKind(document["model_kind"])
    except (KeyError, ValueError) as e:
        raise DataError(f"Unknown model kind: {document.get('model_kind')}") from e

    cls = ModelRegistry.model_class(kind)
    return cls.from_parameters(
        int(document["n_features"]),
        _decode(document["hyperparameters"]),
        _decode(document["parameters"]),
    )


def save_model(model: Model, path: Union[str, Path]) -> str:
    return write_text(str(path), model_to_json(model) + "\n")


def load_model(path: Union[str, Path]) -> Model:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DataIOError(f"Cannot read model file {path}: {e}") from e
    return model_from_json(text)
