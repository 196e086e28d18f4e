"""Fermionic lattice simulation with native and Jordan-Wigner backends."""

from .evolve import BACKENDS, EvolutionResult, EvolutionSpec, sweep_costs, trotter_evolve
from .fock import (
    FockOperatorTerm,
    HoppingHamiltonian,
    annihilation_matrix,
    anticommutator_deviation,
    build_operator_matrix,
    exact_evolve,
    hamiltonian_matrix,
    particle_number,
    sector_leakage,
    sector_weights,
)
from .instances import occupation_state, random_instance, random_state
from .jw import compiled_weight, hop_rotation, jw_compile, jw_string, jw_string_length
from .lattice import LatticeGeometry, site_coords, site_index
from .native import native_hop_gate, native_number_gate, native_term_gate
from .scaling import (
    CSV_HEADER,
    CostRow,
    GateCostReport,
    OverheadLawViolation,
    edge_cost_rows,
    gate_count_scaling,
    hypercube_scaling,
)

__all__ = [
    "BACKENDS",
    "CSV_HEADER",
    "CostRow",
    "EvolutionResult",
    "EvolutionSpec",
    "FockOperatorTerm",
    "GateCostReport",
    "HoppingHamiltonian",
    "LatticeGeometry",
    "OverheadLawViolation",
    "annihilation_matrix",
    "anticommutator_deviation",
    "build_operator_matrix",
    "compiled_weight",
    "edge_cost_rows",
    "exact_evolve",
    "gate_count_scaling",
    "hamiltonian_matrix",
    "hop_rotation",
    "hypercube_scaling",
    "jw_compile",
    "jw_string",
    "jw_string_length",
    "native_hop_gate",
    "native_number_gate",
    "native_term_gate",
    "occupation_state",
    "random_instance",
    "random_state",
    "particle_number",
    "sector_leakage",
    "sector_weights",
    "site_coords",
    "site_index",
    "sweep_costs",
    "trotter_evolve",
]
