"""Dense complex linear-algebra kernels backing the quantum layers.

Thin, validated wrappers around numpy's Hermitian eigensolver plus the tensor
product and trace norm. Dimensions are capped at 2^13 because everything here
is dense and the eigensolves are cubic.
"""

from __future__ import annotations

import numpy as np

from .errors import NonHermitianError, NotPositiveSemidefiniteError, SizeLimitError

DIMENSION_CAP = 2**13
HERMITIAN_ATOL = 1e-10
PSD_EIGENVALUE_FLOOR = -1e-10


def _as_square_matrix(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def require_hermitian(m: np.ndarray, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Validate Hermiticity within atol and return the symmetrized matrix."""
    m = _as_square_matrix(m)
    deviation = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if deviation > atol:
        raise NonHermitianError(f"matrix deviates from Hermitian by {deviation:.3e} > {atol:.1e}")
    return 0.5 * (m + m.conj().T)


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two matrices or two vectors (left-to-right composition)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != b.ndim or a.ndim not in (1, 2):
        raise ValueError("operands must both be vectors or both be square matrices")
    out_dim = a.shape[0] * b.shape[0]
    if out_dim > DIMENSION_CAP:
        raise SizeLimitError(f"tensor product dimension {out_dim} exceeds cap {DIMENSION_CAP}")
    return np.kron(a, b)


def tensor_power(a: np.ndarray, n: int) -> np.ndarray:
    """n-fold Kronecker power, composed left to right."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = np.asarray(a, dtype=complex)
    for _ in range(n - 1):
        out = tensor_product(out, a)
    return out


def hermitian_eigendecomposition(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix."""
    sym = require_hermitian(m)
    eigenvalues, eigenvectors = np.linalg.eigh(sym)
    return eigenvalues, eigenvectors


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Hermitian PSD square root via eigendecomposition.

    Eigenvalues in [-1e-10, 0) are treated as roundoff and clamped to zero;
    anything more negative raises NotPositiveSemidefiniteError.
    """
    eigenvalues, eigenvectors = hermitian_eigendecomposition(m)
    smallest = float(eigenvalues[0]) if eigenvalues.size else 0.0
    if smallest < PSD_EIGENVALUE_FLOOR:
        raise NotPositiveSemidefiniteError(
            f"eigenvalue {smallest:.3e} below the PSD floor {PSD_EIGENVALUE_FLOOR:.1e}"
        )
    roots = np.sqrt(np.clip(eigenvalues, 0.0, None))
    return (eigenvectors * roots) @ eigenvectors.conj().T


def trace_norm(m: np.ndarray) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    eigenvalues, _ = hermitian_eigendecomposition(m)
    return float(np.sum(np.abs(eigenvalues)))
