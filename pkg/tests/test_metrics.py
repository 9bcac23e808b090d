"""Tests for the metric layer and the entropy-rate bounds."""

import math

import numpy as np
import pytest

from markovstates import (
    BoundParams,
    ChainParams,
    DensityMatrix,
    DimensionMismatchError,
    IncompletePovmError,
    MarkovStateSpec,
    QubitPair,
    SizeLimitError,
    Symbol,
    build_markov_state,
    computational_basis_povm,
    discrimination_bound,
    entropy_rate,
    fidelity,
    fidelity_decay_exponent,
    fuchs_van_de_graaf_check,
    helstrom_success,
    measured_bhattacharyya,
    stationary_state,
    string_probability,
    tensor_power,
    trace_distance,
    typical_set,
)
from conftest import random_density_matrix, random_qubit_pair_mixture

G, E = Symbol.GOOD, Symbol.ERR

FIG_CHAIN = ChainParams(0.3, 0.5, 0.5)
THETA = math.pi / 3


def pure(vector) -> DensityMatrix:
    v = np.asarray(vector, dtype=complex)
    return DensityMatrix(np.outer(v, v.conj()))


class TestFidelity:
    def test_self_fidelity(self):
        rng = np.random.default_rng(3)
        for dim in (2, 4, 8):
            rho = random_density_matrix(rng, dim)
            assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-8)

    def test_pure_state_overlap_squared(self):
        c = math.cos(THETA)
        rho = pure([1.0, 0.0])
        sigma = pure([math.cos(THETA), math.sin(THETA)])
        assert fidelity(rho, sigma) == pytest.approx(c**2, abs=1e-12)
        assert fidelity(rho, sigma) == pytest.approx(0.25, abs=1e-12)

    def test_commuting_closed_form(self):
        # Classical overlap (sqrt(0.35) + sqrt(0.15))^2 for these diagonals.
        rho = DensityMatrix(np.diag([0.7, 0.3]).astype(complex))
        sigma = DensityMatrix(np.diag([0.5, 0.5]).astype(complex))
        expected = (math.sqrt(0.35) + math.sqrt(0.15)) ** 2
        assert fidelity(rho, sigma) == pytest.approx(expected, abs=1e-12)
        assert fidelity(rho, sigma) == pytest.approx(0.9582575695, abs=1e-9)
        # Nearby diagonal pair with a distinctive value, kept as a second pin.
        rho2 = DensityMatrix(np.diag([0.6, 0.4]).astype(complex))
        assert fidelity(rho2, sigma) == pytest.approx(0.9898979486, abs=1e-9)

    def test_symmetric(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            rho = random_qubit_pair_mixture(rng)
            sigma = random_qubit_pair_mixture(rng)
            assert fidelity(rho, sigma) == pytest.approx(fidelity(sigma, rho), abs=1e-8)

    def test_multiplicative_over_tensor_products(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            a, b = random_density_matrix(rng, 2), random_density_matrix(rng, 4)
            c, d = random_density_matrix(rng, 2), random_density_matrix(rng, 4)
            left = fidelity(
                DensityMatrix(np.kron(a.matrix, b.matrix)),
                DensityMatrix(np.kron(c.matrix, d.matrix)),
            )
            assert left == pytest.approx(fidelity(a, c) * fidelity(b, d), abs=1e-7)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            fidelity(pure([1, 0]), pure([1, 0, 0, 0]))


class TestTraceDistance:
    def test_identical(self):
        rho = pure([1.0, 0.0])
        assert trace_distance(rho, rho) == 0.0

    def test_orthogonal_pure(self):
        assert trace_distance(pure([1.0, 0.0]), pure([0.0, 1.0])) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_diagonal_example(self):
        rho = DensityMatrix(np.diag([0.7, 0.3]).astype(complex))
        sigma = DensityMatrix(np.diag([0.5, 0.5]).astype(complex))
        assert trace_distance(rho, sigma) == pytest.approx(0.2, abs=1e-12)

    def test_metric_properties(self):
        rng = np.random.default_rng(9)
        for _ in range(15):
            a = random_density_matrix(rng, 4)
            b = random_density_matrix(rng, 4)
            c = random_density_matrix(rng, 4)
            assert trace_distance(a, b) == pytest.approx(trace_distance(b, a), abs=1e-8)
            assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-8


class TestHelstromSuccess:
    def test_identical_states_coin_flip(self):
        rho = pure([1.0, 0.0])
        assert helstrom_success(rho, rho) == pytest.approx(0.5, abs=1e-12)

    def test_orthogonal_perfect(self):
        assert helstrom_success(pure([1.0, 0.0]), pure([0.0, 1.0])) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_two_pure_states_closed_form(self):
        c = math.cos(THETA)
        success = helstrom_success(pure([1.0, 0.0]), pure([c, math.sin(THETA)]))
        assert success == pytest.approx(0.5 * (1 + math.sqrt(1 - c**2)), abs=1e-12)
        assert success == pytest.approx(0.933013, abs=1e-6)

    def test_equal_priors_identity_with_distance(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            a = random_density_matrix(rng, 4)
            b = random_density_matrix(rng, 4)
            assert helstrom_success(a, b) - 0.5 == pytest.approx(
                0.5 * trace_distance(a, b), abs=1e-10
            )

    def test_invalid_priors(self):
        rho = pure([1.0, 0.0])
        with pytest.raises(ValueError):
            helstrom_success(rho, rho, 0.7, 0.7)
        with pytest.raises(ValueError):
            helstrom_success(rho, rho, -0.5, 1.5)


class TestMeasuredBhattacharyya:
    def test_identical_states(self):
        rho = pure([1.0, 0.0])
        assert measured_bhattacharyya(rho, rho, computational_basis_povm(1)) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_upper_bounds_fidelity_on_source_pairs(self):
        pair = QubitPair(THETA)
        for n in (1, 2, 4, 6, 8):
            markov = build_markov_state(MarkovStateSpec(FIG_CHAIN, pair, n))
            reference = DensityMatrix(
                tensor_power(stationary_state(FIG_CHAIN, pair).matrix, n)
            )
            measured = measured_bhattacharyya(markov, reference, computational_basis_povm(n))
            assert fidelity(markov, reference) <= measured + 1e-8

    def test_commuting_diagonal_saturates(self):
        rho = DensityMatrix(np.diag([0.7, 0.2, 0.1, 0.0]).astype(complex))
        sigma = DensityMatrix(np.diag([0.25, 0.25, 0.25, 0.25]).astype(complex))
        measured = measured_bhattacharyya(rho, sigma, computational_basis_povm(2))
        assert measured == pytest.approx(fidelity(rho, sigma), abs=1e-10)

    def test_incomplete_povm_rejected(self):
        rho = pure([1.0, 0.0])
        with pytest.raises(IncompletePovmError):
            measured_bhattacharyya(rho, rho, [np.diag([1.0, 0.0])])

    def test_dimension_mismatch_inside_povm(self):
        rho = pure([1.0, 0.0])
        with pytest.raises(DimensionMismatchError):
            measured_bhattacharyya(rho, rho, [np.eye(4)])


class TestComputationalBasisPovm:
    def test_single_qubit_elements(self):
        povm = computational_basis_povm(1)
        assert np.array_equal(povm[0], np.diag([1.0, 0.0]))
        assert np.array_equal(povm[1], np.diag([0.0, 1.0]))

    def test_completeness_exact(self):
        povm = computational_basis_povm(3)
        total = sum(povm, start=np.zeros((8, 8), dtype=complex))
        assert np.array_equal(total, np.eye(8))

    def test_orthogonality(self):
        povm = computational_basis_povm(2)
        for i in range(4):
            for j in range(4):
                product = povm[i] @ povm[j]
                if i == j:
                    assert np.array_equal(product, povm[i])
                else:
                    assert not product.any()

    def test_sequence_behavior(self):
        povm = computational_basis_povm(4)
        assert len(povm) == 16
        assert povm[-1][15, 15] == 1.0
        assert len(povm[2:5]) == 3
        with pytest.raises(IndexError):
            povm[16]

    def test_size_cap(self):
        with pytest.raises(SizeLimitError):
            computational_basis_povm(13)


class TestFuchsVanDeGraaf:
    def test_identical(self):
        rho = pure([1.0, 0.0])
        lower, distance = fuchs_van_de_graaf_check(rho, rho)
        assert lower == pytest.approx(0.0, abs=1e-8)
        assert distance == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal(self):
        lower, distance = fuchs_van_de_graaf_check(pure([1.0, 0.0]), pure([0.0, 1.0]))
        assert lower == pytest.approx(1.0, abs=1e-8)
        assert distance == pytest.approx(1.0, abs=1e-12)

    def test_hundred_random_mixtures(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            rho = random_qubit_pair_mixture(rng)
            sigma = random_qubit_pair_mixture(rng)
            lower, distance = fuchs_van_de_graaf_check(rho, sigma)
            assert lower <= distance + 1e-8


class TestFidelityDecayExponent:
    def test_hand_computed_values(self):
        exponent = fidelity_decay_exponent(FIG_CHAIN, BoundParams(0.01))
        h_binomial = -(0.625 * math.log2(0.625) + 0.375 * math.log2(0.375))
        h_chain = entropy_rate(FIG_CHAIN)
        assert h_binomial == pytest.approx(0.954434, abs=1e-6)
        assert h_chain == pytest.approx(0.925807, abs=1e-6)
        expected = h_binomial + h_chain - 0.02 - 2 * abs(h_binomial - h_chain + 0.02)
        assert exponent == pytest.approx(expected, abs=1e-12)
        assert exponent == pytest.approx(1.762987, abs=1e-5)

    def test_symmetric_chain_small_slack(self):
        # Equal entropies collapse the formula to 2 - 6*tau.
        for tau in (1e-3, 1e-6, 1e-9):
            exponent = fidelity_decay_exponent(ChainParams(0.5, 0.5, 0.5), BoundParams(tau))
            assert exponent == pytest.approx(2.0 - 6.0 * tau, abs=1e-12)

    def test_large_slack_returns_negative(self):
        exponent = fidelity_decay_exponent(FIG_CHAIN, BoundParams(2.0))
        assert exponent < 0.0


class TestDiscriminationBound:
    def test_equal_hypotheses_substitution(self):
        # Same delta on both sides: exponent 2H - 6*tau by direct substitution.
        pair = QubitPair(THETA)
        tau, n = 0.01, 5
        spec = MarkovStateSpec(ChainParams(0.3, 0.4, 0.5), pair, n)
        bound = discrimination_bound(spec, spec, BoundParams(tau))
        h = entropy_rate(spec.chain)
        assert bound.overlap_bound == pytest.approx(2 ** (-n * (2 * h - 6 * tau)), abs=1e-12)

    def test_regression_fixture(self):
        pair = QubitPair(THETA)
        bound = discrimination_bound(
            MarkovStateSpec(ChainParams(0.3, 0.2, 0.5), pair, 7),
            MarkovStateSpec(ChainParams(0.3, 0.8, 0.5), pair, 7),
            BoundParams(0.01),
        )
        assert bound.overlap_bound == pytest.approx(0.000570953417147608, abs=1e-15)
        assert bound.trace_lower == pytest.approx(0.9761053684450334, abs=1e-12)

    def test_vacuous_bound_clamped(self):
        # Overlap bound >= 1 must clamp the distance bound at zero.
        pair = QubitPair(THETA)
        spec0 = MarkovStateSpec(ChainParams(0.3, 1.0, 0.5), pair, 2)
        spec1 = MarkovStateSpec(ChainParams(0.3, 0.0, 0.5), pair, 2)
        bound = discrimination_bound(spec0, spec1, BoundParams(0.01))
        assert bound.overlap_bound >= 1.0
        assert bound.trace_lower == 0.0

    def test_mismatched_n_rejected(self):
        pair = QubitPair(THETA)
        with pytest.raises(DimensionMismatchError):
            discrimination_bound(
                MarkovStateSpec(FIG_CHAIN, pair, 3),
                MarkovStateSpec(FIG_CHAIN, pair, 4),
                BoundParams(0.01),
            )

    def test_mismatched_epsilon_rejected(self):
        pair = QubitPair(THETA)
        with pytest.raises(ValueError):
            discrimination_bound(
                MarkovStateSpec(ChainParams(0.3, 0.5, 0.5), pair, 3),
                MarkovStateSpec(ChainParams(0.4, 0.5, 0.5), pair, 3),
                BoundParams(0.01),
            )


class TestTypicalSet:
    def test_fair_coin_all_typical(self):
        fair = ChainParams(0.5, 0.5, 0.5)
        for n in (3, 6):
            report = typical_set(
                lambda s: string_probability(fair, s), 1.0, BoundParams(0.05), n
            )
            assert report.cardinality == 2**n
            assert report.captured_probability == pytest.approx(1.0, abs=1e-10)

    def test_members_respect_thresholds(self):
        report = typical_set(
            lambda s: string_probability(FIG_CHAIN, s),
            entropy_rate(FIG_CHAIN),
            BoundParams(0.1),
            10,
        )
        for member in report.members:
            p = string_probability(FIG_CHAIN, member)
            assert report.lower_threshold <= p <= report.upper_threshold

    def test_capture_monotone_in_tau(self):
        h = entropy_rate(FIG_CHAIN)
        captured = [
            typical_set(
                lambda s: string_probability(FIG_CHAIN, s), h, BoundParams(tau), 12
            ).captured_probability
            for tau in (0.05, 0.1, 0.2, 0.4)
        ]
        assert all(b >= a for a, b in zip(captured, captured[1:]))

    def test_capture_grows_with_n(self):
        h = entropy_rate(FIG_CHAIN)
        captured = [
            typical_set(
                lambda s: string_probability(FIG_CHAIN, s), h, BoundParams(0.1), n
            ).captured_probability
            for n in (8, 12, 16)
        ]
        assert captured[0] < captured[1] < captured[2]

    def test_degenerate_source_single_string(self):
        # Only the all-Good string carries mass; it is typical iff H <= tau.
        degenerate = ChainParams(0.0, 0.5, 1.0)
        prob = lambda s: string_probability(degenerate, s)
        inside = typical_set(prob, 0.05, BoundParams(0.1), 6)
        assert inside.cardinality == 1
        assert inside.captured_probability == pytest.approx(1.0, abs=1e-12)
        outside = typical_set(prob, 0.5, BoundParams(0.1), 6)
        assert outside.cardinality == 0

    def test_size_cap(self):
        with pytest.raises(SizeLimitError):
            typical_set(lambda s: 0.0, 1.0, BoundParams(0.1), 21)

    def test_bound_params_validation(self):
        with pytest.raises(ValueError):
            BoundParams(0.0)
