"""Lanczos tridiagonalization with full reorthogonalization.

The engine works on flat vectors through an operator object exposing
``apply(x)`` and ``inner(a, b)``. The recurrence

    r = H phi_n - v_n phi_n - w_{n-1} phi_{n-1}

is followed by two classical Gram-Schmidt passes against every stored
Lanczos vector, so the basis stays orthonormal to working precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from .errors import InvalidState, NumericalOverflow, ZeroVector
from .hamiltonian import Spinor

RUNNING = "running"
BREAKDOWN = "breakdown"

BREAKDOWN_RTOL = 1e-12
ZERO_NORM = 1e-300


class SymmetricOperator(Protocol):
    dim: int

    def apply(self, x: np.ndarray) -> np.ndarray: ...

    def inner(self, a: np.ndarray, b: np.ndarray) -> float: ...


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Symmetric tridiagonal matrix: diagonal ``v_1..v_n``, off-diagonal ``w_1..w_{n-1}``."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        diag = np.asarray(self.diag, dtype=float)
        offdiag = np.asarray(self.offdiag, dtype=float)
        if offdiag.shape != (max(diag.size - 1, 0),):
            raise ValueError(
                f"offdiag must have {max(diag.size - 1, 0)} entries, got {offdiag.size}"
            )
        if np.any(offdiag <= 0):
            raise ValueError("offdiag entries must be strictly positive")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)

    @property
    def order(self) -> int:
        return self.diag.size

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


@dataclass
class LanczosState:
    """Mutable iteration state owned by a single run.

    ``vectors`` holds every orthonormal Lanczos vector generated so far. While
    the run is active that is ``phi_1..phi_{n+1}``; ``iteration`` is ``n``, the
    order of the tridiagonal matrix.
    """

    operator: SymmetricOperator
    vectors: list[np.ndarray]
    diag: list[float] = field(default_factory=list)
    offdiag: list[float] = field(default_factory=list)
    residual: np.ndarray | None = None
    residual_norm: float = math.nan
    status: str = RUNNING

    @property
    def iteration(self) -> int:
        return len(self.diag)

    @property
    def basis(self) -> np.ndarray:
        """The ``n`` vectors spanning the current Krylov subspace, one per row."""
        return np.array(self.vectors[: max(self.iteration, 1)])

    def basis_spinors(self) -> list[Spinor]:
        return [self.operator.to_spinor(v) for v in self.basis]


def init(start, operator: SymmetricOperator) -> LanczosState:
    """Normalize ``start`` (a Spinor or flat vector) into ``phi_1``."""
    x = start.to_array() if isinstance(start, Spinor) else np.asarray(start, dtype=float)
    if x.shape != (operator.dim,):
        raise ValueError(f"start vector has shape {x.shape}, operator dimension is {operator.dim}")
    if not np.all(np.isfinite(x)):
        raise NumericalOverflow("start vector has non-finite entries")
    norm = math.sqrt(operator.inner(x, x))
    if norm <= ZERO_NORM:
        raise ZeroVector("start vector has zero norm")
    return LanczosState(operator=operator, vectors=[x / norm])


def _orthogonalize(w: np.ndarray, vectors: list[np.ndarray], inner) -> np.ndarray:
    for _ in range(2):
        coeffs = np.array([inner(q, w) for q in vectors])
        w = w - np.array(vectors).T @ coeffs
    return w


def step(state: LanczosState) -> LanczosState:
    """Extend the tridiagonal matrix by one row and column.

    Appends ``v_n`` and ``w_n``; when ``w_n`` falls below
    ``1e-12 * ||H phi_n||`` the Krylov subspace is invariant and the status
    becomes ``breakdown``.
    """
    if state.status != RUNNING:
        raise InvalidState(f"cannot step a Lanczos state with status {state.status!r}")
    op = state.operator
    n = state.iteration
    phi = state.vectors[n]
    hphi = op.apply(phi)
    v = op.inner(phi, hphi)
    r = hphi - v * phi
    if n > 0:
        r = r - state.offdiag[n - 1] * state.vectors[n - 1]
    r = _orthogonalize(r, state.vectors, op.inner)
    w = math.sqrt(max(op.inner(r, r), 0.0))
    hnorm = math.sqrt(op.inner(hphi, hphi))
    if not (math.isfinite(v) and math.isfinite(w) and math.isfinite(hnorm)):
        raise NumericalOverflow(f"non-finite Lanczos coefficient at step {n + 1}")

    state.diag.append(v)
    state.residual = r
    state.residual_norm = w
    if w <= BREAKDOWN_RTOL * hnorm or len(state.vectors) >= op.dim:
        state.status = BREAKDOWN
        return state
    state.offdiag.append(w)
    state.vectors.append(r / w)
    return state


def tridiagonal(state: LanczosState) -> TridiagonalMatrix:
    """The projected operator in the Lanczos basis after ``state.iteration`` steps."""
    n = state.iteration
    return TridiagonalMatrix(np.array(state.diag), np.array(state.offdiag[: max(n - 1, 0)]))
