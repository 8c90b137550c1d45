"""Start vectors and closed-form Coulomb-Dirac energies."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import InvalidParameter
from .grid import RadialGrid, inner_product
from .hamiltonian import DiracParams, Spinor

ExponentRule = Literal["product", "power"]


@dataclass(frozen=True)
class StartVectorSpec:
    """Perturbed ground-state shape ``r^(s*gamma) exp(-z alpha r)``.

    ``exponent_rule="product"`` (default) uses the exponent ``s * gamma``;
    ``"power"`` uses ``s ** gamma`` instead. Both reduce to ``r^s`` at
    ``gamma = 1``.
    """

    gamma: float
    params: DiracParams
    exponent_rule: ExponentRule = "product"

    def __post_init__(self):
        if not np.isfinite(self.gamma) or self.gamma <= 0:
            raise InvalidParameter(f"gamma must be positive, got {self.gamma!r}")
        if self.exponent_rule not in ("product", "power"):
            raise InvalidParameter(f"unknown exponent_rule {self.exponent_rule!r}")

    @property
    def exponent(self) -> float:
        s = self.params.s
        if self.exponent_rule == "power":
            return s**self.gamma
        return s * self.gamma


def bethe_start(spec: StartVectorSpec, grid: RadialGrid) -> Spinor:
    """Normalized start spinor built from the kappa = -1 ground-state shape.

    ``g = r^p exp(-za r)`` and ``f = (s - 1) g / za`` with ``p`` given by
    ``spec.exponent``. For ``z = 0`` the lower component vanishes.
    """
    params = spec.params
    if params.kappa != -1:
        warnings.warn(
            f"start vector uses the kappa = -1 shape but the operator has kappa = {params.kappa}",
            RuntimeWarning,
            stacklevel=2,
        )
    za = params.coupling
    r = grid.points
    g = r**spec.exponent * np.exp(-za * r)
    # (s - 1)/za -> -za/2 as za -> 0
    ratio = (params.s - 1.0) / za if za > 0 else 0.0
    psi = Spinor(g, ratio * g, grid)
    norm = math.sqrt(inner_product(psi, psi))
    if norm == 0.0 or not np.isfinite(norm):
        raise InvalidParameter("start vector has zero or non-finite norm on this grid")
    return psi * (1.0 / norm)


def lowest_principal_n(kappa: int) -> int:
    """Smallest allowed principal quantum number for ``kappa``."""
    return abs(kappa) if kappa < 0 else abs(kappa) + 1


def exact_energy(params: DiracParams, principal_n: int) -> float:
    """Sommerfeld fine-structure energy in units of ``m c^2``.

    ``E = [1 + (za / (n - |kappa| + s_kappa))^2]^(-1/2)`` with
    ``s_kappa = sqrt(kappa^2 - za^2)``. For ``kappa > 0`` the radial quantum
    number ``n - |kappa|`` must be at least 1.
    """
    if int(principal_n) != principal_n or principal_n < 1:
        raise InvalidParameter(f"principal_n must be a positive integer, got {principal_n!r}")
    kappa = params.kappa
    if principal_n < lowest_principal_n(kappa):
        raise InvalidParameter(
            f"principal_n = {principal_n} is not allowed for kappa = {kappa}"
        )
    za = params.coupling
    s_kappa = math.sqrt(kappa * kappa - za * za)
    return 1.0 / math.sqrt(1.0 + (za / (principal_n - abs(kappa) + s_kappa)) ** 2)
