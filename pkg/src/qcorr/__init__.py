"""Two-qubit open-system toolkit: XY-model decoherence dynamics, X-state
algebra and quantum-correlation measures."""

from .errors import (
    ConvergenceFailure,
    CrossCheckFailure,
    DegenerateParams,
    DomainError,
    NoDeath,
    NotHermitian,
    NotPSD,
    NotXShaped,
    StepRejected,
    TraceNotOne,
)
from .linalg import (
    HermitianEigensystem,
    hermitian_eigensystem,
    partial_transpose_a,
    partial_transpose_b,
    psd_sqrt,
    trace_norm,
)
from .model import ModelParams, hamiltonian, spin_lowering, spin_raising
from .states import (
    DickeState,
    XState,
    dumps_density_matrix,
    from_dicke,
    is_x_shaped,
    loads_density_matrix,
    make_mixture,
    make_werner,
    purity,
    reduced_a,
    reduced_b,
    to_dicke,
    trace_out_a,
    trace_out_b,
    validate,
)
from .measures import (
    CorrelationSet,
    WMatrix,
    concurrence_branches,
    concurrence_dicke,
    concurrence_general,
    concurrence_log_negativity_bounds,
    concurrence_negativity_bounds,
    concurrence_signed,
    concurrence_x,
    correlated_coherence,
    correlated_coherence_general,
    correlations,
    l1_coherence,
    log_negativity,
    lqu,
    lqu_x,
    min_trace,
    min_trace_general,
    negativity,
    negativity_trace_norm,
    w_matrix_x,
)
from .dynamics import (
    ESDResult,
    Trajectory,
    analytic_independent_mixture,
    analytic_mixture,
    analytic_werner,
    concurrence_thermal_independent,
    dark_intervals_of_series,
    esd_time_thermal,
    esd_time_zero_temp,
    evolve,
    find_dark_intervals,
    lindblad_rhs,
    steady_ccc_thermal,
    steady_concurrence_thermal,
    steady_correlations_thermal,
    steady_lqu_thermal,
    steady_state_thermal,
    steady_state_zero_temp,
    steady_w_entries_zero_temp,
)

__version__ = "0.1.0"
