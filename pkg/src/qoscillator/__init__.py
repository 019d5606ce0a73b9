"""q-deformed harmonic oscillator: q-special functions, coordinate-space
ladder operators on an exact Gaussian-exponential algebra, eigenfunctions,
coherent states, uncertainty observables, and spectroscopic level fitting."""

from .errors import (
    DegenerateData,
    DimensionMismatch,
    DimTooSmall,
    DivergentArgument,
    InternalConsistencyError,
    NoConvergence,
    OutsideConvergenceDisk,
    QOscillatorError,
    TermBudgetExceeded,
    TooLargeN,
    ZeroState,
)
from .fock import (
    FockVector,
    LadderMatrices,
    basis_vector,
    fock_expectation,
    hamiltonian_matrix,
    ladder_matrices,
    momentum_matrix,
    position_matrix,
)
from .gaussexp import (
    GaussExpSum,
    GaussExpTerm,
    add,
    evaluate,
    inner_product,
    multiply_plane_wave,
    norm,
    scale,
    shift_argument,
)
from .levelfit import FitResult, LevelData, fit_levels, predict_levels
from .observables import (
    OperatorKind,
    UncertaintyReport,
    energy_coherent_closed_form,
    expectation,
    uncertainty_coherent_closed_form,
    uncertainty_eigen_closed_form,
    uncertainty_report,
)
from .operators import (
    annihilate,
    create,
    create_swapped_order,
    hamiltonian,
    momentum_op,
    position_op,
    q_commutator_residual,
)
from .qarith import (
    DeformationParams,
    TruncatedSeriesValue,
    convergence_radius,
    q_binomial,
    q_exponential,
    q_factorial,
    q_factorial_log,
    q_integer,
    quadratic_expansion_residual,
    spectrum_energy,
)
from .quadrature import QuadratureConfig, QuadratureResult, integrate_line
from .states import (
    CoherentParams,
    coherent_density_limit_q0,
    coherent_fock,
    coherent_limit_q1,
    coherent_wavefunction,
    coherent_wavefunction_with_diagnostic,
    eigenstate,
    eigenstate_density_limit_q0,
    eigenstate_ladder,
    eigenstate_limit_q1,
    vacuum,
)
from .verify import CheckResult, run_checks

__version__ = "0.1.0"
