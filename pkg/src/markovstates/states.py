"""Construction of the density matrices emitted by Good/Err qubit sources.

A source emits |0> for a Good symbol and |phi> (overlap c = cos(theta) with
|0>) for an Err symbol. Mixing the 2^n product-string projectors with the
chain's string probabilities gives the correlated n-emission state; tensoring
per-step marginals gives the uncorrelated approximation of the same source.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .chain import ChainParams, DistributionVector, Symbol, evolve, stationary_distribution, string_probabilities
from .errors import SizeLimitError
from .linalg import require_hermitian, tensor_power

MARKOV_STATE_MAX_N = 12
PURE_STRING_MAX_LEN = 13

DENSITY_HERMITIAN_ATOL = 1e-10
DENSITY_TRACE_ATOL = 1e-10
STATE_NORM_ATOL = 1e-12


@dataclass(frozen=True)
class QubitPair:
    """The two emitted pure states |0> and |phi>, with overlap c = cos(theta).

    theta is restricted to [0, pi/2] so the overlap is real in [0, 1]; |phi>
    is realized with real amplitudes (cos(theta), sin(theta)) since only the
    overlap magnitude enters any derived quantity.
    """

    theta: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.theta <= math.pi / 2):
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta!r}")

    @property
    def overlap(self) -> float:
        """c = cos(theta), in [0, 1]."""
        return math.cos(self.theta)

    @classmethod
    def from_overlap(cls, c: float) -> "QubitPair":
        if not (0.0 <= c <= 1.0):
            raise ValueError(f"overlap must lie in [0, 1], got {c!r}")
        return cls(math.acos(c))

    def good_state(self) -> np.ndarray:
        return np.array([1.0, 0.0], dtype=complex)

    def err_state(self) -> np.ndarray:
        return np.array([math.cos(self.theta), math.sin(self.theta)], dtype=complex)


@dataclass(frozen=True)
class MarkovStateSpec:
    """Everything needed to realize one n-emission source state as a dense matrix."""

    chain: ChainParams
    pair: QubitPair
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.n > MARKOV_STATE_MAX_N:
            raise SizeLimitError(
                f"n={self.n} exceeds the dense realization cap of {MARKOV_STATE_MAX_N}"
            )


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Dense Hermitian unit-trace matrix; hermiticity and trace are checked eagerly.

    Positivity is a contract of the constructors (all of them mix projectors
    with nonnegative weights) and is exercised by the test suite through
    min_eigenvalue rather than re-checked on every construction.
    """

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        sym = require_hermitian(self.matrix, DENSITY_HERMITIAN_ATOL)
        trace = float(np.real(np.trace(sym)))
        if abs(trace - 1.0) > DENSITY_TRACE_ATOL:
            raise ValueError(f"trace must be 1 within {DENSITY_TRACE_ATOL:.1e}, got {trace!r}")
        object.__setattr__(self, "matrix", sym)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix)[0])

    def to_json_dict(self) -> dict:
        """Serializable form: {dim, entries: [[re, im], ...]} in row-major order."""
        flat = self.matrix.reshape(-1)
        return {
            "dim": self.dim,
            "entries": [[float(z.real), float(z.imag)] for z in flat],
        }


def pure_string_state(s: Sequence[Symbol], pair: QubitPair) -> np.ndarray:
    """Product state vector for a symbol string: GOOD -> |0>, ERR -> |phi>."""
    bits = [int(sym) for sym in s]
    if len(bits) < 1:
        raise ValueError("symbol string must have length >= 1")
    if len(bits) > PURE_STRING_MAX_LEN:
        raise SizeLimitError(f"string length {len(bits)} exceeds cap {PURE_STRING_MAX_LEN}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("symbols must be Symbol.GOOD or Symbol.ERR")
    single = (pair.good_state(), pair.err_state())
    state = single[bits[0]]
    for b in bits[1:]:
        state = np.kron(state, single[b])
    return state


def string_state_columns(pair: QubitPair, n: int) -> np.ndarray:
    """2^n x 2^n matrix whose column i is the product state of string i.

    Strings follow the canonical enumeration order, so this is the n-fold
    Kronecker power of the 2x2 matrix holding |0> and |phi> as columns.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > MARKOV_STATE_MAX_N:
        raise SizeLimitError(f"n={n} exceeds the dense realization cap of {MARKOV_STATE_MAX_N}")
    base = np.array(
        [[1.0, math.cos(pair.theta)], [0.0, math.sin(pair.theta)]], dtype=float
    )
    columns = base
    for _ in range(n - 1):
        columns = np.kron(columns, base)
    return columns


def mixture_of_string_states(weights: np.ndarray, pair: QubitPair, n: int) -> DensityMatrix:
    """Mix the 2^n product-string projectors with the given weights."""
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (2**n,):
        raise ValueError(f"expected {2**n} weights, got shape {weights.shape}")
    if np.any(weights < -1e-15):
        raise ValueError("mixture weights must be nonnegative")
    columns = string_state_columns(pair, n)
    matrix = (columns * weights) @ columns.T
    return DensityMatrix(matrix.astype(complex))


def build_markov_state(spec: MarkovStateSpec) -> DensityMatrix:
    """Mixture of all 2^n product-string projectors weighted by chain probabilities."""
    weights = string_probabilities(spec.chain, spec.n)
    return mixture_of_string_states(weights, spec.pair, spec.n)


def qubit_mixture(weights: DistributionVector, pair: QubitPair) -> DensityMatrix:
    """Single-qubit state w_good |0><0| + w_err |phi><phi|."""
    good = pair.good_state()
    err = pair.err_state()
    matrix = weights.p_good * np.outer(good, good.conj()) + weights.p_err * np.outer(
        err, err.conj()
    )
    return DensityMatrix(matrix)


def build_iid_state(p: float, pair: QubitPair, n: int) -> DensityMatrix:
    """n-fold tensor power of the single-copy mixture p |0><0| + (1-p) |phi><phi|."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > MARKOV_STATE_MAX_N:
        raise SizeLimitError(f"n={n} exceeds the dense realization cap of {MARKOV_STATE_MAX_N}")
    single = qubit_mixture(DistributionVector(p, 1.0 - p), pair)
    return DensityMatrix(tensor_power(single.matrix, n))


def mu_k(chain: ChainParams, pair: QubitPair, k: int) -> DensityMatrix:
    """Single-qubit marginal of the k-th emission; k=1 is the initial mixture."""
    if k < 1:
        raise ValueError("k must be >= 1")
    initial = DistributionVector(chain.p0, 1.0 - chain.p0)
    return qubit_mixture(evolve(initial, chain, k - 1), pair)


def build_tensored_source_state(chain: ChainParams, pair: QubitPair, n: int) -> DensityMatrix:
    """Tensor product of the per-step marginals mu_1 x ... x mu_n.

    This drops the temporal correlations of the source; it coincides with the
    correlated construction only in special parameter regions.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > MARKOV_STATE_MAX_N:
        raise SizeLimitError(f"n={n} exceeds the dense realization cap of {MARKOV_STATE_MAX_N}")
    out = mu_k(chain, pair, 1).matrix
    for k in range(2, n + 1):
        out = np.kron(out, mu_k(chain, pair, k).matrix)
    return DensityMatrix(out)


def stationary_state(chain: ChainParams, pair: QubitPair) -> DensityMatrix:
    """Single-qubit state with the chain's stationary weights."""
    return qubit_mixture(stationary_distribution(chain), pair)
