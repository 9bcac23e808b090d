"""Source-stability verification: hypothesis pairs over delta and the sweeps.

Deciding whether the error-recovery rate of a source is delta0 or delta1
(shared epsilon) reduces to discriminating the two n-emission states, so the
report bundles the Helstrom success probability, the exact distance and
fidelity, and the analytic lower bound, with an optional Monte Carlo check of
the optimal measurement.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .chain import (
    ChainParams,
    WindowConstraint,
    _strings_from_uniforms,
    sparsity_probability_exact,
    sparsity_probability_series,
)
from .errors import SizeLimitError
from .metrics import BoundParams, DiscriminationBound, discrimination_bound, fidelity, helstrom_success, trace_distance
from .states import DensityMatrix, MarkovStateSpec, QubitPair, build_markov_state, stationary_state, string_state_columns
from .linalg import tensor_power

VERIFICATION_MAX_N = 10
SPARSITY_SWEEP_MAX_N = 24
PROJECTOR_EIGENVALUE_CUTOFF = 1e-12


@dataclass(frozen=True)
class HypothesisPair:
    """Two source hypotheses sharing epsilon: recovery rate delta0 vs delta1.

    delta0 == delta1 is tolerated (it makes the two states identical, success
    1/2) because sweeps cross that point; the CLI front end insists on a
    strict inequality.
    """

    epsilon0: float
    delta0: float
    delta1: float
    pair: QubitPair
    p0: float
    n: int
    priors: tuple[float, float] = (0.5, 0.5)

    def __post_init__(self) -> None:
        if not (0.0 <= self.delta0 <= self.delta1 <= 1.0):
            raise ValueError("hypotheses must satisfy 0 <= delta0 <= delta1 <= 1")
        q0, q1 = self.priors
        if q0 < 0.0 or q1 < 0.0 or abs(q0 + q1 - 1.0) > 1e-12:
            raise ValueError("priors must be nonnegative and sum to 1")
        if self.n > VERIFICATION_MAX_N:
            raise SizeLimitError(f"n={self.n} exceeds the verification cap {VERIFICATION_MAX_N}")
        # Chain validation happens when the specs are built; fail early instead.
        self.spec0()
        self.spec1()

    def spec0(self) -> MarkovStateSpec:
        return MarkovStateSpec(
            ChainParams(self.epsilon0, self.delta0, self.p0), self.pair, self.n
        )

    def spec1(self) -> MarkovStateSpec:
        return MarkovStateSpec(
            ChainParams(self.epsilon0, self.delta1, self.p0), self.pair, self.n
        )


@dataclass(frozen=True)
class MonteCarloResult:
    success: float
    stderr: float
    trials: int


@dataclass(frozen=True)
class VerificationReport:
    """Exact discrimination quantities for one hypothesis pair."""

    helstrom_success: float
    trace_distance: float
    fidelity: float
    bound: DiscriminationBound
    empirical_success: float | None = None
    empirical_stderr: float | None = None

    def with_simulation(self, result: MonteCarloResult) -> "VerificationReport":
        return replace(
            self, empirical_success=result.success, empirical_stderr=result.stderr
        )


def _hypothesis_states(h: HypothesisPair) -> tuple[DensityMatrix, DensityMatrix]:
    return build_markov_state(h.spec0()), build_markov_state(h.spec1())


def discrimination_report(h: HypothesisPair, bounds: BoundParams) -> VerificationReport:
    """Build both hypothesis states and compute every discrimination quantity.

    Bound fields are always populated, even when the analytic bound is vacuous
    (reported as trace_lower = 0).
    """
    state0, state1 = _hypothesis_states(h)
    q0, q1 = h.priors
    return VerificationReport(
        helstrom_success=helstrom_success(state0, state1, q0, q1),
        trace_distance=trace_distance(state0, state1),
        fidelity=fidelity(state0, state1),
        bound=discrimination_bound(h.spec0(), h.spec1(), bounds),
    )


def optimal_projector(h: HypothesisPair) -> np.ndarray:
    """Projector onto the strictly positive eigenspace of q0*rho0 - q1*rho1.

    Eigenvectors with |eigenvalue| below 1e-12 are excluded, so identical
    hypotheses yield the zero projector (the "always guess 1" strategy, which
    already attains the optimum there).
    """
    state0, state1 = _hypothesis_states(h)
    q0, q1 = h.priors
    difference = q0 * state0.matrix - q1 * state1.matrix
    eigenvalues, eigenvectors = np.linalg.eigh(0.5 * (difference + difference.conj().T))
    keep = eigenvalues > PROJECTOR_EIGENVALUE_CUTOFF
    vectors = eigenvectors[:, keep]
    return vectors @ vectors.conj().T


def simulate_discrimination(h: HypothesisPair, trials: int, seed: int) -> MonteCarloResult:
    """Monte Carlo run of the optimal two-outcome measurement.

    Per trial: pick a hypothesis by the priors, sample an emission string from
    that chain, form its pure product state and apply {P, 1-P} with P the
    optimal projector; guess hypothesis 0 on the P outcome. Draw order for a
    fixed seed: hypothesis uniforms (trials,), then string uniforms
    (trials, n) row-major, then measurement uniforms (trials,).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    projector = optimal_projector(h)
    columns = string_state_columns(h.pair, h.n)
    # <x|P|x> for every string x, indexed canonically.
    accept_prob = np.real(np.sum(columns.conj() * (projector @ columns), axis=0))
    accept_prob = np.clip(accept_prob, 0.0, 1.0)

    rng = np.random.default_rng(seed)
    q0, _ = h.priors
    hypothesis = (rng.random(trials) >= q0).astype(np.int8)
    string_uniforms = rng.random((trials, h.n))
    measure_uniforms = rng.random(trials)

    deltas = np.where(hypothesis == 0, h.delta0, h.delta1)
    strings = _strings_from_uniforms(
        string_uniforms[:, 0], string_uniforms[:, 1:], h.p0, h.epsilon0, deltas
    )
    weights = 1 << np.arange(h.n - 1, -1, -1, dtype=np.int64)
    indices = strings.astype(np.int64) @ weights
    guess = (measure_uniforms >= accept_prob[indices]).astype(np.int8)
    success = float(np.mean(guess == hypothesis))
    stderr = float(np.sqrt(success * (1.0 - success) / trials))
    return MonteCarloResult(success=success, stderr=stderr, trials=trials)


def sweep_fidelity_decay(
    chain: ChainParams, pair: QubitPair, n_max: int
) -> list[tuple[int, float]]:
    """Fidelity between the n-emission state and the stationary tensor power, n = 1..n_max."""
    if not (1 <= n_max <= VERIFICATION_MAX_N):
        raise SizeLimitError(f"n_max must lie in 1..{VERIFICATION_MAX_N}")
    single = stationary_state(chain, pair)
    series: list[tuple[int, float]] = []
    for n in range(1, n_max + 1):
        markov = build_markov_state(MarkovStateSpec(chain, pair, n))
        reference = DensityMatrix(tensor_power(single.matrix, n))
        series.append((n, fidelity(markov, reference)))
    return series


def sweep_trace_distance(
    epsilon: float,
    p0: float,
    pair: QubitPair,
    n: int,
    delta_grid: Sequence[float],
) -> list[tuple[float, float]]:
    """Trace distance between the delta0 = 1-delta and delta1 = delta states over a grid."""
    if n > VERIFICATION_MAX_N:
        raise SizeLimitError(f"n={n} exceeds the verification cap {VERIFICATION_MAX_N}")
    series: list[tuple[float, float]] = []
    for delta in delta_grid:
        state0 = build_markov_state(
            MarkovStateSpec(ChainParams(epsilon, 1.0 - delta, p0), pair, n)
        )
        state1 = build_markov_state(
            MarkovStateSpec(ChainParams(epsilon, delta, p0), pair, n)
        )
        series.append((float(delta), trace_distance(state0, state1)))
    return series


def sweep_sparsity_surface(
    n: int,
    w: WindowConstraint,
    p0: float,
    epsilon_grid: Sequence[float],
    delta_grid: Sequence[float],
) -> list[tuple[float, float, float, float]]:
    """Exact and series sparsity probabilities over an (epsilon, delta) lattice.

    Rows are emitted with epsilon as the outer loop, delta inner; each row is
    (epsilon, delta, exact, series).
    """
    if n > SPARSITY_SWEEP_MAX_N:
        raise SizeLimitError(f"n={n} exceeds the sweep cap {SPARSITY_SWEEP_MAX_N}")
    rows: list[tuple[float, float, float, float]] = []
    for epsilon in epsilon_grid:
        for delta in delta_grid:
            params = ChainParams(float(epsilon), float(delta), p0)
            exact = sparsity_probability_exact(params, n, w)
            series = sparsity_probability_series(params, n)
            rows.append((float(epsilon), float(delta), exact, series))
    return rows
