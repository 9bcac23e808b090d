"""Toolkit for quantum sources whose emissions follow a two-state Markov chain.

The package builds the n-emission density matrices of such sources, compares
them with distance/fidelity metrics and entropy-rate bounds, and reproduces
the standard sweep experiments (window sparsity, fidelity decay, hypothesis
discrimination) through a deterministic CLI.
"""

from .chain import (
    ChainParams,
    DistributionVector,
    Symbol,
    SymbolString,
    WindowConstraint,
    binary_entropy,
    entropy_rate,
    enumerate_strings,
    error_count,
    evolve,
    sample_string,
    sample_strings,
    sparsity_probability_exact,
    sparsity_probability_series,
    stationary_distribution,
    string_probabilities,
    string_probability,
    transition_matrix,
    window_admissible,
)
from .errors import (
    DegenerateChainError,
    DimensionMismatchError,
    IncompletePovmError,
    NonHermitianError,
    NotPositiveSemidefiniteError,
    SizeLimitError,
)
from .linalg import hermitian_eigendecomposition, psd_sqrt, tensor_power, tensor_product, trace_norm
from .metrics import (
    BoundParams,
    DiscriminationBound,
    TypicalSetReport,
    computational_basis_povm,
    discrimination_bound,
    fidelity,
    fidelity_decay_exponent,
    fuchs_van_de_graaf_check,
    helstrom_success,
    measured_bhattacharyya,
    trace_distance,
    typical_set,
)
from .states import (
    DensityMatrix,
    MarkovStateSpec,
    QubitPair,
    build_iid_state,
    build_markov_state,
    build_tensored_source_state,
    mu_k,
    pure_string_state,
    qubit_mixture,
    stationary_state,
)
from .verification import (
    HypothesisPair,
    MonteCarloResult,
    VerificationReport,
    discrimination_report,
    optimal_projector,
    simulate_discrimination,
    sweep_fidelity_decay,
    sweep_sparsity_surface,
    sweep_trace_distance,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
