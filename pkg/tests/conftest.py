import numpy as np
import pytest

from dirac_lanczos import DiracParams, build_grid


def dense_dirac(params, grid):
    """Assemble the 2N x 2N Hamiltonian entry by entry from the operator formula."""
    n = grid.n_points
    h = grid.spacing
    r = grid.points
    za = params.coupling
    k = params.kappa
    D = np.zeros((n, n))
    for i in range(n):
        if i + 1 < n:
            D[i, i + 1] = 1.0 / (2 * h)
        if i - 1 >= 0:
            D[i, i - 1] = -1.0 / (2 * h)
    H = np.zeros((2 * n, 2 * n))
    H[:n, :n] = np.diag(1.0 - za / r)
    H[:n, n:] = -D + np.diag(k / r)
    H[n:, :n] = D + np.diag(k / r)
    H[n:, n:] = np.diag(-1.0 - za / r)
    return H


@pytest.fixture
def params():
    return DiracParams(100, -1)


@pytest.fixture
def small_grid():
    return build_grid(60, 20.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
