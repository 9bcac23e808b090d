"""Shared test utilities: brute-force oracles and small matrix helpers."""

from __future__ import annotations

import numpy as np

from markovstates import DensityMatrix


def partial_trace_last_qubit(matrix: np.ndarray) -> np.ndarray:
    """Trace out the last qubit of a 2^n-dimensional matrix (test utility only)."""
    dim = matrix.shape[0]
    half = dim // 2
    reshaped = matrix.reshape(half, 2, half, 2)
    return np.einsum("ijkj->ik", reshaped)


def random_density_matrix(rng: np.random.Generator, dim: int) -> DensityMatrix:
    """Haar-ish random mixed state: normalized A A^dagger with complex Gaussian A."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = a @ a.conj().T
    return DensityMatrix(m / np.trace(m))


def random_qubit_pair_mixture(rng: np.random.Generator) -> DensityMatrix:
    """Random mixture of |0><0| and a random-angle |phi><phi| on one qubit."""
    theta = rng.uniform(0.0, np.pi / 2)
    weight = rng.uniform(0.0, 1.0)
    phi = np.array([np.cos(theta), np.sin(theta)])
    matrix = weight * np.diag([1.0, 0.0]) + (1 - weight) * np.outer(phi, phi)
    return DensityMatrix(matrix.astype(complex))
