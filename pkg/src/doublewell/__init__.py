"""Ground-state study of bosons in a tilted double well.

Exact diagonalization of the two-mode Bose-Hubbard model, its semiclassical
limit, fidelity-susceptibility transition detection, pairwise quantum
correlations (mutual information, classical correlation, quantum discord),
and finite-size scaling of the resulting peaks.
"""

from .errors import (
    ClassificationError,
    ConvergenceError,
    DegeneracyError,
    DoubleWellError,
    InvalidDensityMatrixError,
    InvalidInputError,
)
from .fock import (
    GroundState,
    ModelParams,
    Phase,
    PhaseLabel,
    build_hamiltonian,
    classify_phase,
    full_spectrum,
    ground_state,
    spectrum_weights,
)
from .numerics import (
    EigenPair,
    LinearFit,
    TridiagonalMatrix,
    eigh_hermitian_small,
    eigh_tridiagonal,
    find_roots,
    linear_fit,
    refine_peak,
)
from .observables import (
    ChiResult,
    CorrelationSet,
    MeasurementBasis,
    chi_finite_difference,
    chi_perturbative,
    classical_and_discord,
    correlations,
    fidelity,
    measurement_projectors,
    rho1,
    rho2,
    von_neumann_entropy,
)
from .scaling import (
    PeakInfo,
    ScalingFit,
    ScanConfig,
    ScanResult,
    correlation_peaks,
    find_peaks,
    fit_position_exponent,
    fit_value_scaling,
    refined_chi_peaks,
    scan,
)
from .semiclassical import (
    NO_TRANSITION,
    SemiclassicalPoint,
    critical_lambda,
    energy_per_particle,
    stationary_z,
    z_min,
)

__version__ = "0.1.0"
