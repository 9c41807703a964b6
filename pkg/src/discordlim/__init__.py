"""Quantum discord, classical correlations, and the cost of communicating
measurement records by classical means, for small multipartite systems."""

from .correlations import (
    CorrelationReport,
    MeasurementEnsemble,
    Povm,
    accessible_information,
    classical_correlation,
    discord_given_measurement,
    mutual_information,
    post_measurement_ensemble,
    qubit_projective_povm,
    random_povm,
)
from .koashi_winter import (
    classical_correlation_kw,
    concurrence,
    entanglement_of_formation,
    example_branches,
    example_state,
)
from .linalg import (
    DensityMatrix,
    StateVector,
    binary_entropy,
    hermitian_eigenvalues,
    partial_trace,
    purify,
    random_density_matrix,
    random_isometry_mat,
    random_pure_state,
    random_unitary,
    tensor,
    von_neumann_entropy,
)
from .protocols import (
    BroadcastIsometry,
    ClonerOutput,
    CrossoverResult,
    PreparedEnsembleChannel,
    apply_broadcast,
    average_bound_check,
    classical_copy_isometry,
    cloner_fidelity_scan,
    cloning_recipient_info,
    find_crossover,
    locc_transfer_info,
    measure_and_prepare,
    optimal_state_dependent_cloner,
    random_broadcast_isometry,
    recipient_infos,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
