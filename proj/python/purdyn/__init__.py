"""Reduced-purity dynamics of bipartite quantum systems.

Operators are numpy arrays (complex128); bipartite dimensions are passed as
(d_S, d_E) with basis element (i, j) at flat index i * d_E + j.
"""

from ._core import (
    ConfigError,
    DimensionError,
    Error,
    InvalidArgument,
    InvariantViolation,
    NumericalError,
    bound_interaction,
    bound_second_moment,
    commutator,
    commuting_family,
    correlation_witness,
    decompose_hamiltonian,
    eigh,
    energy_variance,
    evolve,
    intermediate_bound,
    moment,
    mutual_information,
    operator_norm,
    partial_trace,
    product_defect,
    propagator,
    purity,
    purity_derivative,
    purity_derivative_fd,
    random_density,
    random_hermitian,
    remark_family,
    renyi_entropy,
    run_scenario,
    run_suite,
    tensor_product,
    trace_norm,
    truncation_study,
    validate_state,
    von_neumann_entropy,
)

__all__ = [name for name in dir() if not name.startswith("_")]
