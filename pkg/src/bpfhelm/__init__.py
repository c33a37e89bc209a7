"""Phase-fitted finite differences for the 1D Helmholtz equation.

Solves u'' + k^2 u = f on (0, L) with impedance boundary conditions
u'(0) - ik u(0) = g0, u'(L) + ik u(L) = gL, using a Bernoulli phase-fitted
(BPF) scheme that is exact on plane waves, plus classical and
dispersion-corrected three-point baselines, a complex Thomas solver, and a
verification layer for the scheme's identities, bounds and convergence
behavior.
"""

from .analysis import (
    ConvergenceTable,
    ErrorReport,
    ModalExpansion,
    boundary_multiplier,
    boundary_residuals,
    convergence_study,
    dirichlet_modal_solution,
    error_report,
    interior_multiplier,
    interior_residual,
    kernel_lifting,
    sine_coefficients,
    stability_bound_check,
)
from .errors import (
    InvalidGrid,
    ModalResonance,
    NearNyquist,
    NearResonantFrequency,
    NonFiniteSample,
    NonNestedGrids,
    NumericalGuardError,
    ResonantSource,
    ResonantWavenumber,
    SingularParameter,
    SingularSystem,
    SolveQualityWarning,
)
from .grid import (
    GridFunction,
    UniformGrid,
    discrete_laplacian,
    forward_diff,
    make_grid,
    norm_l2h,
    norm_linf,
    norm_v,
    restrict,
    sample,
    seminorm_h1h,
)
from .numerics import (
    WaveParameters,
    bernoulli,
    envelope_derivative_sup,
    nyquist_guard,
    phase_factor_m,
    shifted_wavenumber,
    stability_constant_a0,
    theta,
)
from .reference import (
    ExactSolution,
    PlaneWaveCoefficients,
    box_source_problem,
    fine_grid_reference,
    make_benchmark,
    plane_wave_problem,
    sine_squared_problem,
    smooth_manufactured_problem,
)
from .schemes import (
    HelmholtzProblem,
    SchemeKind,
    apply_one_way_minus,
    apply_one_way_plus,
    assemble_bpf,
    assemble_classical_fd,
    assemble_dispersion_corrected_fd,
    solve_scheme,
)
from .trisolve import TridiagonalSystem, residual_inf_norm, solve_tridiagonal

__version__ = "0.1.0"
