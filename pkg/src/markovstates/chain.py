"""Two-state Markov chain machinery for a source that emits Good/Err symbols.

The chain has parameters epsilon (Good -> Err transition probability),
delta (Err -> Good) and p0 (probability that the first emission is Good).
Everything downstream (state construction, bounds, sweeps) is driven by the
string probabilities computed here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import DegenerateChainError, SizeLimitError

ENUMERATION_MAX_LENGTH = 24
WINDOW_MAX_K = 20

_PROB_ATOL = 1e-12


class Symbol(IntEnum):
    """One emission of the source: the intended state (GOOD) or an error (ERR)."""

    GOOD = 0
    ERR = 1


SymbolString = tuple[Symbol, ...]


def _check_probability(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class ChainParams:
    """Source parameters: epsilon, delta and the initial Good probability p0."""

    epsilon: float
    delta: float
    p0: float

    def __post_init__(self) -> None:
        _check_probability("epsilon", self.epsilon)
        _check_probability("delta", self.delta)
        _check_probability("p0", self.p0)

    @property
    def is_degenerate(self) -> bool:
        """True when epsilon = delta = 0, i.e. the chain never moves."""
        return self.epsilon == 0.0 and self.delta == 0.0


@dataclass(frozen=True)
class DistributionVector:
    """Probability vector over the two chain states (Good, Err)."""

    p_good: float
    p_err: float

    def __post_init__(self) -> None:
        if self.p_good < 0.0 or self.p_err < 0.0:
            raise ValueError("probabilities must be nonnegative")
        if abs(self.p_good + self.p_err - 1.0) > _PROB_ATOL:
            raise ValueError("probabilities must sum to 1 within 1e-12")

    def as_array(self) -> np.ndarray:
        return np.array([self.p_good, self.p_err], dtype=float)


@dataclass(frozen=True)
class WindowConstraint:
    """Sparsity requirement: every k consecutive emissions carry at most l errors."""

    k: int
    l: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("window length k must be >= 1")
        if not (0 <= self.l <= self.k):
            raise ValueError("error budget l must satisfy 0 <= l <= k")


def transition_matrix(params: ChainParams) -> np.ndarray:
    """Return the 2x2 row-stochastic transition matrix [[1-eps, eps], [delta, 1-delta]]."""
    return np.array(
        [
            [1.0 - params.epsilon, params.epsilon],
            [params.delta, 1.0 - params.delta],
        ],
        dtype=float,
    )


def evolve(mu: DistributionVector, params: ChainParams, steps: int) -> DistributionVector:
    """Propagate a distribution `steps` times through the chain (row vector times matrix)."""
    if steps < 0:
        raise ValueError("steps must be >= 0")
    vec = mu.as_array()
    matrix = transition_matrix(params)
    for _ in range(steps):
        vec = vec @ matrix
    return DistributionVector(float(vec[0]), float(vec[1]))


def stationary_distribution(params: ChainParams) -> DistributionVector:
    """Fixed point (delta, epsilon) / (epsilon + delta) of the chain.

    Raises DegenerateChainError for epsilon = delta = 0, where every
    distribution is stationary and the fixed point is not unique.
    """
    total = params.epsilon + params.delta
    if total == 0.0:
        raise DegenerateChainError(
            "epsilon = delta = 0: stationary distribution is not unique"
        )
    return DistributionVector(params.delta / total, params.epsilon / total)


def _as_bits(s: Sequence[int]) -> list[int]:
    bits = [int(sym) for sym in s]
    if len(bits) < 1:
        raise ValueError("symbol string must have length >= 1")
    if any(b not in (0, 1) for b in bits):
        raise ValueError("symbols must be Symbol.GOOD or Symbol.ERR")
    return bits


def string_probability(params: ChainParams, s: Sequence[Symbol]) -> float:
    """Chain-rule probability of one emission string.

    First factor is p0 (Good) or 1-p0 (Err); each later symbol contributes the
    one-step transition probability from its predecessor.
    """
    bits = _as_bits(s)
    prob = params.p0 if bits[0] == 0 else 1.0 - params.p0
    matrix = transition_matrix(params)
    for prev, cur in zip(bits, bits[1:]):
        prob *= matrix[prev, cur]
    return float(prob)


def string_probabilities(params: ChainParams, n: int) -> np.ndarray:
    """Probabilities of all 2^n strings of length n, in canonical enumeration order.

    The canonical order is lexicographic with GOOD < ERR, so index i is the
    string whose symbols are the bits of i (most significant bit first).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > ENUMERATION_MAX_LENGTH:
        raise SizeLimitError(f"n={n} exceeds the enumeration budget of {ENUMERATION_MAX_LENGTH}")
    indices = np.arange(2**n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    bits = (indices[:, None] >> shifts[None, :]) & 1
    probs = np.where(bits[:, 0] == 0, params.p0, 1.0 - params.p0)
    matrix = transition_matrix(params)
    for j in range(1, n):
        probs = probs * matrix[bits[:, j - 1], bits[:, j]]
    return probs


def enumerate_strings(n: int) -> list[SymbolString]:
    """All 2^n strings of length n in lexicographic order (GOOD < ERR)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > ENUMERATION_MAX_LENGTH:
        raise SizeLimitError(f"n={n} exceeds the enumeration budget of {ENUMERATION_MAX_LENGTH}")
    return list(itertools.product((Symbol.GOOD, Symbol.ERR), repeat=n))


def iter_strings(n: int) -> Iterator[SymbolString]:
    """Stream the canonical enumeration without materializing the full list."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > ENUMERATION_MAX_LENGTH:
        raise SizeLimitError(f"n={n} exceeds the enumeration budget of {ENUMERATION_MAX_LENGTH}")
    return itertools.product((Symbol.GOOD, Symbol.ERR), repeat=n)


def _strings_from_uniforms(
    first_uniform: np.ndarray,
    step_uniforms: np.ndarray,
    p0: np.ndarray | float,
    epsilon: np.ndarray | float,
    delta: np.ndarray | float,
) -> np.ndarray:
    """Map uniform draws to emission strings; shared by all samplers.

    The first symbol is ERR iff u >= p0; from GOOD the next symbol is ERR iff
    u < epsilon; from ERR it is GOOD iff u < delta.
    """
    count, rest = step_uniforms.shape
    out = np.empty((count, rest + 1), dtype=np.int8)
    out[:, 0] = first_uniform >= p0
    for j in range(rest):
        prev = out[:, j]
        u = step_uniforms[:, j]
        out[:, j + 1] = np.where(prev == 0, u < epsilon, ~(u < delta))
    return out


def sample_strings(params: ChainParams, n: int, count: int, seed: int) -> np.ndarray:
    """Draw `count` independent strings as a (count, n) int8 array (0=GOOD, 1=ERR).

    Deterministic for a fixed seed: a single generator fills one (count, n)
    uniform matrix row-major, and row i is transformed into string i.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    uniforms = rng.random((count, n))
    return _strings_from_uniforms(
        uniforms[:, 0], uniforms[:, 1:], params.p0, params.epsilon, params.delta
    )


def sample_string(params: ChainParams, n: int, seed: int) -> SymbolString:
    """Draw one string; equals the first row of sample_strings with the same seed."""
    row = sample_strings(params, n, 1, seed)[0]
    return tuple(Symbol(int(b)) for b in row)


def error_count(s: Sequence[Symbol]) -> int:
    """Number of ERR symbols in the string."""
    return sum(_as_bits(s))


def binary_entropy(p: float) -> float:
    """Entropy -p*log2(p) - (1-p)*log2(1-p) in bits, with 0*log(0) = 0."""
    p = _check_probability("p", p)
    if p == 0.0 or p == 1.0:
        return 0.0
    return float(-p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p))


def entropy_rate(params: ChainParams) -> float:
    """Per-symbol entropy of the stationary chain, in bits.

    Weighted combination of the two row entropies with stationary weights:
    delta/(eps+delta) * H(eps) + eps/(eps+delta) * H(delta).
    """
    stationary = stationary_distribution(params)
    return stationary.p_good * binary_entropy(params.epsilon) + stationary.p_err * binary_entropy(
        params.delta
    )


def window_admissible(s: Sequence[Symbol], w: WindowConstraint) -> bool:
    """True iff every contiguous window of length min(k, len(s)) has at most l errors.

    Strings shorter than k are judged on their single full window.
    """
    bits = _as_bits(s)
    m = min(w.k, len(bits))
    count = sum(bits[:m])
    if count > w.l:
        return False
    for t in range(m, len(bits)):
        count += bits[t] - bits[t - m]
        if count > w.l:
            return False
    return True


def _popcount(values: np.ndarray, width: int) -> np.ndarray:
    counts = np.zeros_like(values)
    for shift in range(width):
        counts += (values >> shift) & 1
    return counts


def sparsity_probability_exact(params: ChainParams, n: int, w: WindowConstraint) -> float:
    """Exact probability that every length-min(k,n) window carries at most l errors.

    Dynamic programming over (position, last min(k,n)-1 symbols); the state
    space is 2^(k-1), so k is capped at 20. Windows overlap: the window ending
    at each position t >= min(k,n) is checked.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if w.k > WINDOW_MAX_K:
        raise SizeLimitError(f"window length k={w.k} exceeds the DP budget of {WINDOW_MAX_K}")
    m = min(w.k, n)
    if w.l >= m:
        return 1.0

    size = 1 << (m - 1)
    mask = size - 1
    states = np.arange(size, dtype=np.int64)
    last = states & 1
    step_prob = (
        np.where(last == 0, 1.0 - params.epsilon, params.delta),
        np.where(last == 0, params.epsilon, 1.0 - params.delta),
    )
    full = ((states << 1), (states << 1) | 1)
    window_ok = tuple(_popcount(f, m) <= w.l for f in full)
    nxt = tuple(f & mask for f in full)

    dist = np.zeros(size, dtype=float)
    for a, first_prob in ((0, params.p0), (1, 1.0 - params.p0)):
        if m <= 1 and a > w.l:
            continue
        dist[a & mask] += first_prob

    for t in range(2, n + 1):
        new = np.zeros(size, dtype=float)
        for a in (0, 1):
            contrib = dist * step_prob[a]
            if t >= m:
                contrib = np.where(window_ok[a], contrib, 0.0)
            new += np.bincount(nxt[a], weights=contrib, minlength=size)
        dist = new
    return float(np.sum(dist))


def sparsity_probability_series(params: ChainParams, n: int) -> float:
    """Closed-form series estimate of the k=3, l=1 window-sparsity probability.

    Sums, over the number j of errors removed from the densest admissible
    string, binomial(m, m-j) * p0 * (eps*delta)^(m-j) * (1-eps)^(m+2j) with
    m = floor((n-1)/3). This is an analytic estimate; compare it against
    sparsity_probability_exact rather than substituting one for the other.
    """
    if n < 4:
        raise ValueError("series estimate requires n >= 4")
    m = (n - 1) // 3
    ed = params.epsilon * params.delta
    one_minus_eps = 1.0 - params.epsilon
    total = 0.0
    for j in range(m + 1):
        total += math.comb(m, m - j) * params.p0 * ed ** (m - j) * one_minus_eps ** (m + 2 * j)
    return float(total)


def marginal_distribution(
    prob: Callable[[SymbolString], float], n: int, position: int
) -> DistributionVector:
    """Distribution of the symbol at `position` (1-based) under a length-n string law.

    Test-oriented helper: sums the string law over all strings, so it is only
    usable for small n.
    """
    if not (1 <= position <= n):
        raise ValueError("position must lie in 1..n")
    p_good = 0.0
    total = 0.0
    for s in iter_strings(n):
        p = prob(s)
        total += p
        if s[position - 1] == Symbol.GOOD:
            p_good += p
    if total <= 0.0:
        raise ValueError("string law sums to zero")
    return DistributionVector(p_good / total, 1.0 - p_good / total)
