"""Matrix-free radial Dirac Hamiltonian on a uniform grid.

For reduced radial functions ``g = rG`` and ``f = rF`` in units
``hbar = m = c = 1`` the Hamiltonian acts as::

    H (g, f) = ( -(za/r - 1) g - f' + (kappa/r) f,
                  g' + (kappa/r) g - (za/r + 1) f )

The derivative is a central difference with zero ghost values at both ends,
which is skew-symmetric, so the discrete operator is exactly symmetric
under the grid inner product.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter
from .grid import RadialGrid, check_same_grid

FINE_STRUCTURE = 7.2973525693e-3
SELF_ADJOINT_LIMIT = math.sqrt(3.0) / 2.0


@dataclass(frozen=True, eq=False)
class Spinor:
    """Two-component radial wavefunction sampled on ``grid``."""

    g: np.ndarray
    f: np.ndarray
    grid: RadialGrid

    def __post_init__(self):
        g = np.asarray(self.g, dtype=float)
        f = np.asarray(self.f, dtype=float)
        n = self.grid.n_points
        if g.shape != (n,) or f.shape != (n,):
            raise InvalidParameter(
                f"spinor components must have shape ({n},), got {g.shape} and {f.shape}"
            )
        if not (np.all(np.isfinite(g)) and np.all(np.isfinite(f))):
            raise InvalidParameter("spinor entries must be finite")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "f", f)

    @classmethod
    def zeros(cls, grid: RadialGrid) -> "Spinor":
        return cls(np.zeros(grid.n_points), np.zeros(grid.n_points), grid)

    @classmethod
    def from_array(cls, values: np.ndarray, grid: RadialGrid) -> "Spinor":
        """Split a stacked ``[g, f]`` vector of length ``2N``."""
        values = np.asarray(values, dtype=float)
        n = grid.n_points
        if values.shape != (2 * n,):
            raise InvalidParameter(f"expected a vector of length {2 * n}, got {values.shape}")
        return cls(values[:n].copy(), values[n:].copy(), grid)

    def to_array(self) -> np.ndarray:
        return np.concatenate([self.g, self.f])

    def __add__(self, other: "Spinor") -> "Spinor":
        check_same_grid(self.grid, other.grid)
        return Spinor(self.g + other.g, self.f + other.f, self.grid)

    def __sub__(self, other: "Spinor") -> "Spinor":
        check_same_grid(self.grid, other.grid)
        return Spinor(self.g - other.g, self.f - other.f, self.grid)

    def __mul__(self, scalar: float) -> "Spinor":
        return Spinor(scalar * self.g, scalar * self.f, self.grid)

    __rmul__ = __mul__


@dataclass(frozen=True)
class DiracParams:
    """Nuclear charge ``z``, angular quantum number ``kappa`` and coupling ``alpha``."""

    z: int
    kappa: int
    alpha: float = FINE_STRUCTURE

    def __post_init__(self):
        if int(self.z) != self.z or self.z < 0:
            raise InvalidParameter(f"z must be a non-negative integer, got {self.z!r}")
        if int(self.kappa) != self.kappa or self.kappa == 0:
            raise InvalidParameter(f"kappa must be a nonzero integer, got {self.kappa!r}")
        if not np.isfinite(self.alpha) or self.alpha <= 0:
            raise InvalidParameter(f"alpha must be positive, got {self.alpha!r}")
        za = self.z * self.alpha
        if za >= 1.0:
            raise InvalidParameter(f"z*alpha = {za:.6g} >= 1 gives an imaginary s")
        if za >= SELF_ADJOINT_LIMIT:
            warnings.warn(
                f"z*alpha = {za:.6g} exceeds sqrt(3)/2; the Coulomb-Dirac operator "
                "is not essentially self-adjoint in this regime",
                RuntimeWarning,
                stacklevel=2,
            )

    @property
    def coupling(self) -> float:
        """The effective Coulomb coupling ``z * alpha``."""
        return self.z * self.alpha

    @property
    def s(self) -> float:
        return math.sqrt(1.0 - self.coupling**2)


def central_difference(u: np.ndarray, h: float) -> np.ndarray:
    """``(u[i+1] - u[i-1]) / 2h`` with ``u`` taken as zero outside the grid."""
    du = np.empty_like(u)
    du[1:-1] = u[2:] - u[:-2]
    du[0] = u[1]
    du[-1] = -u[-2]
    return du / (2.0 * h)


def _apply_components(g, f, params: DiracParams, grid: RadialGrid):
    r = grid.points
    h = grid.spacing
    za_r = params.coupling / r
    k_r = params.kappa / r
    out_g = -(za_r - 1.0) * g - central_difference(f, h) + k_r * f
    out_f = central_difference(g, h) + k_r * g - (za_r + 1.0) * f
    return out_g, out_f


def apply_h(psi: Spinor, params: DiracParams, grid: RadialGrid) -> Spinor:
    """Apply the discrete radial Dirac Hamiltonian to ``psi``."""
    check_same_grid(psi.grid, grid)
    out_g, out_f = _apply_components(psi.g, psi.f, params, grid)
    return Spinor(out_g, out_f, grid)


def apply_h_squared(psi: Spinor, params: DiracParams, grid: RadialGrid) -> Spinor:
    # literal double application keeps <psi|H^2|psi> == ||H psi||^2
    return apply_h(apply_h(psi, params, grid), params, grid)


class DiracOperator:
    """The Hamiltonian acting on stacked ``[g, f]`` vectors.

    This is the interface the Lanczos engine consumes: ``apply`` maps a flat
    vector to a flat vector and ``inner`` is the grid inner product. Any
    other symmetric operator exposing the same two methods can be used.
    """

    def __init__(self, params: DiracParams, grid: RadialGrid):
        self.params = params
        self.grid = grid
        self.dim = 2 * grid.n_points

    def apply(self, x: np.ndarray) -> np.ndarray:
        n = self.grid.n_points
        out_g, out_f = _apply_components(x[:n], x[n:], self.params, self.grid)
        return np.concatenate([out_g, out_f])

    def inner(self, a: np.ndarray, b: np.ndarray) -> float:
        return float(self.grid.spacing * np.dot(a, b))

    def to_spinor(self, x: np.ndarray) -> Spinor:
        return Spinor.from_array(x, self.grid)

    def dense(self) -> np.ndarray:
        """Assemble the full ``2N x 2N`` matrix column by column (small grids only)."""
        eye = np.eye(self.dim)
        return np.column_stack([self.apply(eye[:, j]) for j in range(self.dim)])


class MatrixOperator:
    """An explicit symmetric matrix behind the same interface as DiracOperator."""

    def __init__(self, matrix: np.ndarray):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidParameter("matrix must be square")
        if not np.allclose(matrix, matrix.T, rtol=0, atol=1e-14 * np.abs(matrix).max()):
            raise InvalidParameter("matrix must be symmetric")
        self.matrix = matrix
        self.dim = matrix.shape[0]

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.matrix @ x

    def inner(self, a: np.ndarray, b: np.ndarray) -> float:
        return float(np.dot(a, b))
