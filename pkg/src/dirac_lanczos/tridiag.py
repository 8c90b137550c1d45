"""Ritz pairs from the Lanczos tridiagonal matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .errors import IterationMismatch, NoConvergence
from .lanczos import LanczosState, TridiagonalMatrix


@dataclass(frozen=True)
class RitzPair:
    value: float
    coeffs: np.ndarray
    iteration: int


def eigen_tridiag(tmat: TridiagonalMatrix) -> list[RitzPair]:
    """All eigenpairs of ``tmat``, ascending by value."""
    n = tmat.order
    if n == 0:
        return []
    if n == 1:
        return [RitzPair(float(tmat.diag[0]), np.ones(1), 1)]
    try:
        values, vectors = eigh_tridiagonal(tmat.diag, tmat.offdiag, lapack_driver="stev")
    except LinAlgError as exc:
        raise NoConvergence(f"tridiagonal eigensolver failed at order {n}") from exc
    return [RitzPair(float(values[k]), vectors[:, k].copy(), n) for k in range(n)]


def ritz_vector(pair: RitzPair, state: LanczosState) -> np.ndarray:
    """Expand ``pair.coeffs`` in the Lanczos basis as a flat vector."""
    if pair.iteration != state.iteration:
        raise IterationMismatch(
            f"Ritz pair from iteration {pair.iteration} used with state at iteration {state.iteration}"
        )
    return pair.coeffs @ state.basis
