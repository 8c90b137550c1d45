"""Lanczos eigensolver for bound states of the radial Coulomb-Dirac equation."""

from .config import RunConfig, load_config
from .convergence import (
    BOUND,
    SPURIOUS,
    UNDETERMINED,
    EigenTrace,
    classify,
    compute_delta,
    match_traces,
    residual_delta,
)
from .errors import (
    ConfigError,
    DiracLanczosError,
    GridMismatch,
    InvalidParameter,
    InvalidState,
    IterationMismatch,
    NoConvergence,
    NumericalOverflow,
    ZeroVector,
)
from .grid import RadialGrid, build_grid, inner_product
from .hamiltonian import (
    FINE_STRUCTURE,
    DiracOperator,
    DiracParams,
    MatrixOperator,
    Spinor,
    apply_h,
    apply_h_squared,
)
from .lanczos import LanczosState, TridiagonalMatrix, init, step, tridiagonal
from .reference import StartVectorSpec, bethe_start, exact_energy, lowest_principal_n
from .runner import RunReport, emit_outputs, run
from .tridiag import RitzPair, eigen_tridiag, ritz_vector

__version__ = "0.1.0"
