"""Uniform radial grid with Dirichlet-zero endpoints.

The grid stores interior points only, ``r_i = i * h`` for ``i = 1..N`` with
``h = r_max / (N + 1)``. Functions are implicitly zero at ``r = 0`` and at
``r = r_max``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatch, InvalidParameter


@dataclass(frozen=True, eq=False)
class RadialGrid:
    n_points: int
    r_max: float
    spacing: float = field(init=False)
    points: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        h = self.r_max / (self.n_points + 1)
        pts = h * np.arange(1, self.n_points + 1, dtype=float)
        pts.setflags(write=False)
        object.__setattr__(self, "spacing", h)
        object.__setattr__(self, "points", pts)

    def same_as(self, other: "RadialGrid") -> bool:
        return self is other or (
            self.n_points == other.n_points and self.r_max == other.r_max
        )


def build_grid(n_points: int, r_max: float) -> RadialGrid:
    """Return the uniform interior grid on ``(0, r_max)``.

    Raises InvalidParameter unless ``n_points >= 2`` and ``r_max > 0``.
    """
    if int(n_points) != n_points or n_points < 2:
        raise InvalidParameter(f"n_points must be an integer >= 2, got {n_points!r}")
    if not np.isfinite(r_max) or r_max <= 0:
        raise InvalidParameter(f"r_max must be positive and finite, got {r_max!r}")
    return RadialGrid(int(n_points), float(r_max))


def check_same_grid(a: RadialGrid, b: RadialGrid) -> None:
    if not a.same_as(b):
        raise GridMismatch(
            f"grids differ: N={a.n_points}, r_max={a.r_max} vs "
            f"N={b.n_points}, r_max={b.r_max}"
        )


def inner_product(a, b, grid: RadialGrid | None = None) -> float:
    """Rectangle-rule inner product ``h * sum(g_a g_b + f_a f_b)``.

    Because the endpoint values vanish, this coincides with the trapezoid rule.
    """
    check_same_grid(a.grid, b.grid)
    if grid is not None:
        check_same_grid(a.grid, grid)
    h = a.grid.spacing
    return float(h * (np.dot(a.g, b.g) + np.dot(a.f, b.f)))
