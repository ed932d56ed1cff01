"""Hypergeometric states of a single-mode quantized field.

Numerical library for a one-parameter deformation of the binomial
states: state construction, photon statistics and squeezing indices,
the deformed ladder-operator algebra, and Q/Wigner phase-space
functions, each cross-checked against independent brute-force oracles.
"""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DegenerateSpectrum,
    DomainError,
    HgstateError,
    InvalidParams,
    RangeError,
    TruncationError,
)
from .specfn import LogValue, gen_binomial, laguerre, log_gen_binomial, vandermonde_identity_gap
from .states import (
    HgsParams,
    StateVector,
    binomial_amplitudes,
    coherent_amplitudes,
    fidelity,
    hgs_amplitudes,
    l_min,
    number_state,
    photon_distribution,
    state_to_csv,
    state_to_json,
)
from .statistics import (
    LoweringCoefficients,
    PhotonStatistics,
    closed_form_stats,
    direct_stats,
    lowering_coefficients,
    squeezing_indices,
    squeezing_scan,
)
from .algebra import (
    am_minus_matrix,
    annihilation_matrix,
    contraction_error,
    creation_matrix,
    eigensystem_check,
    jm_plus_matrix,
    ladder_operator,
    number_matrix,
    structure_function,
    verify_gdo_relations,
    verify_ladder_equation,
)
from .phasespace import (
    GridSpec,
    PhaseSpaceGrid,
    Q_KIND,
    WIGNER_KIND,
    displacement_element,
    evaluate_grid,
    grid_extrema,
    grid_integral,
    grid_to_csv,
    grid_to_json,
    q_function,
    wigner_function,
)
from .oracle import UrnSpec, binomial_pmf, displacement_by_expm, poisson_pmf, urn_distribution

__all__ = [
    "__version__",
    "HgstateError", "InvalidParams", "DomainError", "RangeError",
    "TruncationError", "ConvergenceError", "DegenerateSpectrum",
    "LogValue", "gen_binomial", "log_gen_binomial", "laguerre", "vandermonde_identity_gap",
    "HgsParams", "StateVector", "l_min", "hgs_amplitudes", "binomial_amplitudes",
    "coherent_amplitudes", "number_state", "photon_distribution", "fidelity",
    "state_to_json", "state_to_csv",
    "PhotonStatistics", "LoweringCoefficients", "closed_form_stats", "direct_stats",
    "lowering_coefficients", "squeezing_indices", "squeezing_scan",
    "annihilation_matrix", "creation_matrix", "number_matrix", "jm_plus_matrix",
    "am_minus_matrix", "ladder_operator", "structure_function", "verify_gdo_relations",
    "verify_ladder_equation", "eigensystem_check", "contraction_error",
    "GridSpec", "PhaseSpaceGrid", "Q_KIND", "WIGNER_KIND", "displacement_element",
    "q_function", "wigner_function", "evaluate_grid", "grid_integral", "grid_extrema",
    "grid_to_csv", "grid_to_json",
    "UrnSpec", "urn_distribution", "binomial_pmf", "poisson_pmf", "displacement_by_expm",
]
