"""Wigner-Yanase asymmetry of two spins under the magnetic dipolar interaction."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .entanglement import concurrence, concurrence_pure
from .errors import (
    ConfigError,
    DomainError,
    MdiError,
    NotPSDError,
    NumericError,
    ScanError,
    ShapeError,
)
from .linalg import EigenSystem, eigh, partial_trace, sqrt_psd
from .measures import (
    AsymmetryValue,
    closed_form_pure,
    closed_form_rho1,
    closed_form_rho3,
    local_asymmetry,
    local_closed_form_rho1,
    local_closed_form_rho3,
    local_state,
    normalization,
    unitary_asymmetry,
    unitary_asymmetry_pure_closed,
    wy_asymmetry,
    wy_asymmetry_pure,
)
from .model import (
    BellCoefficients,
    BlochAxis,
    BlochProductParams,
    DensityMatrix,
    MdiHamiltonian,
    PureProductParams,
    Subsystem,
    bell_coefficients,
    bloch_product_state,
    build_hamiltonian,
    canonical_hamiltonian,
    evolve_density,
    evolve_pure_closed,
    pure_product_state,
    unitary_at,
)
from .scan import AxisSpec, GridSpec, Measure, Path, ScanResult, landmark_report, run_scan
