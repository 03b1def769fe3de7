from dataclasses import dataclass

import numpy as np

from ..utils.const import JACOBI_MAX_DIM, JACOBI_MAX_SWEEPS, JACOBI_TOL, SYMMETRY_TOL
from ..utils.errors import DimensionMismatchError, NoConvergenceError, NotSymmetricError

__all__ = ["EigenResult", "symmetric_eigen", "fix_signs"]


@dataclass(frozen=True, eq=False)
class EigenResult:
    eigenvalues: np.ndarray  # descending
    eigenvectors: np.ndarray  # column j pairs with eigenvalues[j]
    sweeps: int = 0
    method: str = "jacobi"


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so that its largest-magnitude coordinate is positive."""
    if vectors.size == 0:
        return vectors
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def _check_symmetric(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(A.shape[0] if A.ndim == 2 else 0, A.shape[-1], "rows (square matrix)")
    if not np.all(np.isfinite(A)):
        raise NotSymmetricError("Matrix has non-finite entries")

    scale = np.linalg.norm(A)
    if np.linalg.norm(A - A.T) > SYMMETRY_TOL * max(scale, 1.0):
        raise NotSymmetricError("Matrix is not symmetric")

    return 0.5 * (A + A.T)


def _sorted(values: np.ndarray, vectors: np.ndarray, sweeps: int, method: str) -> EigenResult:
    order = np.argsort(-values, kind="stable")
    return EigenResult(
        eigenvalues=values[order],
        eigenvectors=fix_signs(vectors[:, order]),
        sweeps=sweeps,
        method=method,
    )


def _off_diagonal_max(A: np.ndarray) -> float:
    off = A - np.diag(np.diag(A))
    return float(np.max(np.abs(off))) if off.size else 0.0


def _jacobi(A: np.ndarray, tol: float, max_sweeps: int) -> EigenResult:
    n = A.shape[0]
    A = A.copy()
    V = np.eye(n)

    fro = np.linalg.norm(A)
    if fro == 0.0 or n == 1:
        return _sorted(np.diag(A).copy(), V, 0, "jacobi")

    threshold = tol * fro
    for sweep in range(max_sweeps + 1):
        if _off_diagonal_max(A) < threshold:
            return _sorted(np.diag(A).copy(), V, sweep, "jacobi")
        if sweep == max_sweeps:
            break

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue

                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = 1.0 if theta == 0.0 else np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c

                col_p, col_q = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q

                row_p, row_q = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0

                vec_p, vec_q = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vec_p - s * vec_q
                V[:, q] = s * vec_p + c * vec_q

    raise NoConvergenceError(max_sweeps)


def symmetric_eigen(
    A: np.ndarray,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
    method: str = "jacobi",
) -> EigenResult:
    """
    Full spectrum of a real symmetric matrix, eigenvalues descending.

    method="jacobi" runs cyclic Jacobi rotations; "lapack" defers to
    numpy.linalg.eigh; "auto" picks Jacobi up to JACOBI_MAX_DIM rows.
    """

    A = _check_symmetric(A)

    if method == "auto":
        method = "jacobi" if A.shape[0] <= JACOBI_MAX_DIM else "lapack"

    if method == "jacobi":
        return _jacobi(A, tol, max_sweeps)
    elif method == "lapack":
        values, vectors = np.linalg.eigh(A)
        return _sorted(values, vectors, 0, "lapack")
    else:
        raise ValueError(f"Unknown eigen method: {method}")
