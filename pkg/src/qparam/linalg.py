"""Hermitian eigenvalue solvers and matrix (de)serialization.

Matrices are plain numpy arrays (or scipy sparse matrices where noted).
Dense full diagonalization is used up to ``DENSE_THRESHOLD``; above that a
Lanczos iteration (ARPACK) computes the smallest eigenvalue.
"""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ConvergenceError, InvalidInputError, ResourceError

DENSE_THRESHOLD = 2048
HERMITIAN_TOL = 1e-12
LANCZOS_TOL = 1e-10


def _as_operator(matrix):
    if sp.issparse(matrix):
        return matrix.tocsr()
    out = np.asarray(matrix, dtype=complex)
    if out.ndim != 2 or out.shape[0] != out.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {out.shape}")
    return out


def is_hermitian(matrix, tol: float = HERMITIAN_TOL) -> bool:
    m = _as_operator(matrix)
    if sp.issparse(m):
        diff = m - m.conj().T
        return abs(diff).max() <= tol if diff.nnz else True
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def require_hermitian(matrix, tol: float = HERMITIAN_TOL):
    m = _as_operator(matrix)
    if not is_hermitian(m, tol):
        raise InvalidInputError("matrix is not Hermitian within tolerance")
    return m


def min_eigenvalue(matrix, mode: str = "dense") -> float:
    """Smallest eigenvalue of a Hermitian matrix.

    ``mode`` selects dense full diagonalization or a Lanczos iteration; the
    two agree to 1e-8 on any valid input.
    """
    m = require_hermitian(matrix)
    dim = m.shape[0]
    if mode == "dense":
        dense = m.toarray() if sp.issparse(m) else m
        return float(np.linalg.eigvalsh(dense)[0])
    if mode != "iterative":
        raise InvalidInputError(f"unknown mode {mode!r}")
    if dim <= 2:
        # ARPACK needs k < dim; trivial sizes are cheaper dense anyway
        dense = m.toarray() if sp.issparse(m) else m
        return float(np.linalg.eigvalsh(dense)[0])
    try:
        vals = spla.eigsh(
            m, k=1, which="SA", tol=LANCZOS_TOL, maxiter=10 * dim,
            return_eigenvectors=False,
        )
    except spla.ArpackNoConvergence as exc:
        best = float(exc.eigenvalues[0]) if len(exc.eigenvalues) else None
        raise ConvergenceError(
            f"Lanczos iteration did not converge within {10 * dim} iterations",
            best_estimate=best,
        ) from exc
    return float(vals[0])


def full_spectrum(matrix) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending."""
    m = require_hermitian(matrix)
    if m.shape[0] > DENSE_THRESHOLD:
        raise ResourceError(
            f"dimension {m.shape[0]} exceeds dense threshold {DENSE_THRESHOLD}"
        )
    dense = m.toarray() if sp.issparse(m) else m
    return np.sort(np.linalg.eigvalsh(dense))


def matrix_to_json(matrix) -> list:
    """Row-major nested lists of [re, im] pairs."""
    m = np.asarray(matrix, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def matrix_from_json(data) -> np.ndarray:
    try:
        return np.array(
            [[complex(re, im) for re, im in row] for row in data], dtype=complex
        )
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed matrix JSON: {exc}") from exc
