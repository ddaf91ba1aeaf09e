"""Dense complex linear algebra on numpy arrays.

Matrices are ``complex128`` arrays. Vectors of C^2 (x) C^d use the composite
index ``(a, j) -> a*d + j``, i.e. the ket order |00'>, |01'>, ..., |1(d-1)'>.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ShapeError

DEFAULT_EPS = 1e-10


@dataclass(frozen=True)
class Tolerance:
    """Absolute bound on entrywise deviation."""

    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not (self.eps > 0 and math.isfinite(self.eps)):
            raise ValueError(f"tolerance must be a positive finite number, got {self.eps!r}")


TolLike = Union[Tolerance, float, None]


def as_eps(tol: TolLike) -> float:
    if tol is None:
        return DEFAULT_EPS
    if isinstance(tol, Tolerance):
        return tol.eps
    return Tolerance(float(tol)).eps


def as_matrix(x) -> np.ndarray:
    a = np.asarray(x, dtype=np.complex128)
    if a.ndim != 2:
        raise ShapeError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


def matmul(A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise ShapeError(f"cannot multiply {A.shape[0]}x{A.shape[1]} by {B.shape[0]}x{B.shape[1]}")
    return A @ B


def tensor_product(A, B) -> np.ndarray:
    """Kronecker product, ``(A (x) B)[p*B.rows + q, r*B.cols + s] = A[p, r] * B[q, s]``."""
    return np.kron(as_matrix(A), as_matrix(B))


def adjoint(A) -> np.ndarray:
    return as_matrix(A).conj().T


def is_unitary(A, tol: TolLike = None) -> bool:
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ShapeError(f"unitarity needs a square matrix, got {A.shape[0]}x{A.shape[1]}")
    return unitarity_deviation(A) <= as_eps(tol)


def unitarity_deviation(A) -> float:
    """Largest entry of |A^dagger A - I|."""
    A = as_matrix(A)
    return float(np.max(np.abs(A.conj().T @ A - np.eye(A.shape[1]))))


def inner_product(u, v) -> complex:
    """<u|v>, conjugate-linear in ``u``."""
    u = np.asarray(u, dtype=np.complex128).ravel()
    v = np.asarray(v, dtype=np.complex128).ravel()
    if u.shape != v.shape:
        raise ShapeError(f"inner product of vectors of length {u.size} and {v.size}")
    return complex(np.vdot(u, v))


def gram_matrix(vectors) -> np.ndarray:
    """Gram matrix of the columns of ``vectors``."""
    V = as_matrix(vectors)
    return V.conj().T @ V


def orthonormality_deviation(vectors) -> tuple[float, tuple[int, int]]:
    """Largest |G - I| entry for the column Gram matrix, with its position."""
    V = as_matrix(vectors)
    if V.shape[1] == 0:
        return 0.0, (0, 0)
    dev = np.abs(gram_matrix(V) - np.eye(V.shape[1]))
    i, j = np.unravel_index(np.argmax(dev), dev.shape)
    return float(dev[i, j]), (int(i), int(j))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed n x n unitary (QR of a Ginibre matrix, phase-fixed)."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


# JSON matrix format: {"rows", "cols", "data": [[re, im], ...]} row-major.

def matrix_to_json(A) -> dict:
    A = as_matrix(A)
    flat = A.ravel()
    return {
        "rows": int(A.shape[0]),
        "cols": int(A.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"malformed matrix object: {exc}") from None
    if rows <= 0 or cols <= 0:
        raise ShapeError(f"matrix dimensions must be positive, got {rows}x{cols}")
    if len(data) != rows * cols:
        raise ShapeError(f"matrix data has {len(data)} entries, expected {rows}*{cols}")
    try:
        flat = np.array([complex(float(re), float(im)) for re, im in data], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"matrix entries must be [re, im] pairs: {exc}") from None
    return flat.reshape(rows, cols)
