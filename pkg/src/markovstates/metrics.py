"""Distance and fidelity metrics between states, plus the analytic bounds.

The Uhlmann formula is the computational route for fidelity; measuring both
states with any fixed POVM gives a Bhattacharyya overlap that can only
overestimate it, which the test suite exercises as an inequality. The
entropy-rate bounds are asymptotic statements: the functions here evaluate
the printed formulas and leave any finite-n comparison to the caller.
"""

from __future__ import annotations

from collections.abc import Sequence as SequenceABC
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .chain import ChainParams, SymbolString, binary_entropy, entropy_rate, iter_strings, stationary_distribution
from .errors import DimensionMismatchError, IncompletePovmError, SizeLimitError
from .linalg import psd_sqrt, require_hermitian, trace_norm
from .states import DensityMatrix, MarkovStateSpec

POVM_COMPLETENESS_ATOL = 1e-8
TYPICAL_SET_MAX_N = 20
BASIS_POVM_MAX_N = 12


@dataclass(frozen=True)
class BoundParams:
    """Typicality slack tau (bits) entering every entropy-rate bound."""

    tau: float

    def __post_init__(self) -> None:
        if self.tau <= 0.0:
            raise ValueError("tau must be > 0")


@dataclass(frozen=True)
class TypicalSetReport:
    """Strings whose probability falls inside the 2^(-n(H +/- tau)) band."""

    members: frozenset[SymbolString]
    lower_threshold: float
    upper_threshold: float
    cardinality: int
    captured_probability: float


@dataclass(frozen=True)
class DiscriminationBound:
    """Analytic overlap bound and the trace-distance lower bound it implies."""

    overlap_bound: float
    trace_lower: float


def _check_same_dim(rho: DensityMatrix, sigma: DensityMatrix) -> None:
    if rho.dim != sigma.dim:
        raise DimensionMismatchError(f"dimension mismatch: {rho.dim} vs {sigma.dim}")


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity (tr sqrt(sqrt(sigma) rho sqrt(sigma)))^2, clamped to [0, 1]."""
    _check_same_dim(rho, sigma)
    root = psd_sqrt(sigma.matrix)
    inner = root @ rho.matrix @ root
    eigenvalues = np.linalg.eigvalsh(0.5 * (inner + inner.conj().T))
    total = float(np.sum(np.sqrt(np.clip(eigenvalues, 0.0, None))))
    return min(1.0, max(0.0, total * total))


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Half the trace norm of rho - sigma."""
    _check_same_dim(rho, sigma)
    return 0.5 * trace_norm(rho.matrix - sigma.matrix)


def helstrom_success(
    rho0: DensityMatrix, rho1: DensityMatrix, q0: float = 0.5, q1: float = 0.5
) -> float:
    """Optimal success probability for discriminating rho0 vs rho1 with priors (q0, q1)."""
    _check_same_dim(rho0, rho1)
    if q0 < 0.0 or q1 < 0.0 or abs(q0 + q1 - 1.0) > 1e-12:
        raise ValueError("priors must be nonnegative and sum to 1")
    return 0.5 * (1.0 + trace_norm(q0 * rho0.matrix - q1 * rho1.matrix))


def measured_bhattacharyya(
    rho: DensityMatrix, sigma: DensityMatrix, povm: Iterable[np.ndarray]
) -> float:
    """Squared Bhattacharyya overlap of the outcome distributions of one POVM.

    For any POVM this is an upper bound on the fidelity; with the eigenbasis
    of commuting states it attains it.
    """
    _check_same_dim(rho, sigma)
    dim = rho.dim
    completeness = np.zeros((dim, dim), dtype=complex)
    overlap = 0.0
    for element in povm:
        element = np.asarray(element, dtype=complex)
        if element.shape != (dim, dim):
            raise DimensionMismatchError(
                f"POVM element shape {element.shape} does not match dimension {dim}"
            )
        completeness += element
        p = max(0.0, float(np.real(np.trace(element @ rho.matrix))))
        q = max(0.0, float(np.real(np.trace(element @ sigma.matrix))))
        overlap += np.sqrt(p * q)
    defect = float(np.max(np.abs(completeness - np.eye(dim))))
    if defect > POVM_COMPLETENESS_ATOL:
        raise IncompletePovmError(f"POVM elements sum to identity only within {defect:.3e}")
    return float(overlap * overlap)


class ComputationalBasisPovm(SequenceABC):
    """The 2^n rank-1 projectors |x><x| of the product basis, built on demand.

    Behaves like an immutable sequence of dense matrices; materializing all
    projectors at once would need 8^n complex entries, so each one is
    constructed when indexed.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        if n > BASIS_POVM_MAX_N:
            raise SizeLimitError(f"n={n} exceeds cap {BASIS_POVM_MAX_N}")
        self._dim = 2**n

    def __len__(self) -> int:
        return self._dim

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(self._dim))]
        if not (-self._dim <= index < self._dim):
            raise IndexError(index)
        index %= self._dim
        projector = np.zeros((self._dim, self._dim), dtype=complex)
        projector[index, index] = 1.0
        return projector


def computational_basis_povm(n: int) -> ComputationalBasisPovm:
    """Von Neumann measurement in the n-qubit computational product basis."""
    return ComputationalBasisPovm(n)


def fuchs_van_de_graaf_check(rho: DensityMatrix, sigma: DensityMatrix) -> tuple[float, float]:
    """Return (1 - sqrt(fidelity), trace distance); the first never exceeds the second."""
    lower = 1.0 - np.sqrt(fidelity(rho, sigma))
    return float(lower), trace_distance(rho, sigma)


def fidelity_decay_exponent(chain: ChainParams, bounds: BoundParams) -> float:
    """Per-symbol exponent governing the fidelity decay against the stationary power.

    E = H_b + H_M - 2*tau - 2*|H_b - H_M + 2*tau| with H_b the entropy of the
    stationary symbol distribution and H_M the chain's entropy rate; for large
    n the log2-fidelity is bounded by -n*E. E may be <= 0, in which case the
    bound is vacuous; the caller decides.
    """
    stationary = stationary_distribution(chain)
    h_binomial = binary_entropy(stationary.p_good)
    h_chain = entropy_rate(chain)
    tau = bounds.tau
    return float(
        h_binomial + h_chain - 2.0 * tau - 2.0 * abs(h_binomial - h_chain + 2.0 * tau)
    )


def _bound_entropy_rate(chain: ChainParams) -> float:
    # For a frozen chain both row entropies vanish, so every stationary
    # weighting gives 0; entropy_rate itself rejects the non-unique case.
    if chain.is_degenerate:
        return 0.0
    return entropy_rate(chain)


def discrimination_bound(
    spec0: MarkovStateSpec, spec1: MarkovStateSpec, bounds: BoundParams
) -> DiscriminationBound:
    """Entropy-rate overlap bound for a hypothesis pair sharing n and epsilon.

    overlap_bound = 2^(-n(H0 + H1 - 2 tau - 2|H0 - H1 + 2 tau|)) and the trace
    distance is lower-bounded by max(0, 1 - sqrt(overlap_bound)); a bound >= 1
    is vacuous and reported as trace_lower = 0.
    """
    if spec0.n != spec1.n:
        raise DimensionMismatchError(f"hypotheses must share n: {spec0.n} vs {spec1.n}")
    if spec0.chain.epsilon != spec1.chain.epsilon:
        raise ValueError("hypotheses must share epsilon")
    h0 = _bound_entropy_rate(spec0.chain)
    h1 = _bound_entropy_rate(spec1.chain)
    tau = bounds.tau
    exponent = h0 + h1 - 2.0 * tau - 2.0 * abs(h0 - h1 + 2.0 * tau)
    overlap = float(2.0 ** (-spec0.n * exponent))
    trace_lower = max(0.0, 1.0 - float(np.sqrt(overlap)))
    return DiscriminationBound(overlap, trace_lower)


def typical_set(
    prob: Callable[[SymbolString], float],
    entropy_bits: float,
    bounds: BoundParams,
    n: int,
) -> TypicalSetReport:
    """Enumerate the strings whose probability lies within 2^(-n(H +/- tau)).

    Captured probability is accumulated in canonical enumeration order, so
    repeated runs agree bit for bit.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > TYPICAL_SET_MAX_N:
        raise SizeLimitError(f"n={n} exceeds cap {TYPICAL_SET_MAX_N}")
    lower = float(2.0 ** (-n * (entropy_bits + bounds.tau)))
    upper = float(2.0 ** (-n * (entropy_bits - bounds.tau)))
    members: list[SymbolString] = []
    captured = 0.0
    for s in iter_strings(n):
        p = prob(s)
        if lower <= p <= upper:
            members.append(s)
            captured += p
    return TypicalSetReport(
        members=frozenset(members),
        lower_threshold=lower,
        upper_threshold=upper,
        cardinality=len(members),
        captured_probability=float(captured),
    )
