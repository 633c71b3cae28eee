"""Session-scoped heavy solves shared across the test suite: three 13-site
lattices plus a 7-site companion, each diagonalized once per session."""

import pytest

from kglattice.bands import solve_bands
from kglattice.breather import geometric_grid, linear_grid, run_breather
from kglattice.onsite import ModelParams


@pytest.fixture(scope="session")
def weak_lattice():
    """13-site quartic lattice at C = 0.05 with the four lowest bound bands."""
    params = ModelParams(a4=0.2, c=0.05, n=13, ncut=6)
    return solve_bands(params, alphas=[1, 2, 3, 4])


@pytest.fixture(scope="session")
def weak_runs(weak_lattice):
    """Breather evolutions per band order, horizons sized to the expected
    lifetimes; the alpha = 4 grid is geometric to span six decades."""
    grids = {
        1: linear_grid(200.0, 801),
        2: linear_grid(2000.0, 1001),
        3: linear_grid(20000.0, 1001),
        4: geometric_grid(1.0e6, 400, decades=6.0),
    }
    return {alpha: run_breather(weak_lattice, alpha, grid=grid)
            for alpha, grid in grids.items()}


@pytest.fixture(scope="session")
def strong_lattice():
    """Same lattice at C = 0.3, where the spectrum is gapless."""
    params = ModelParams(a4=0.2, c=0.3, n=13, ncut=6)
    return solve_bands(params, alphas=[1, 2, 3, 4])


@pytest.fixture(scope="session")
def strong_runs(strong_lattice):
    """Long horizons: the alpha = 1 grid leaves room for recurrences."""
    return {
        1: run_breather(strong_lattice, 1, grid=linear_grid(1000.0, 4001)),
        4: run_breather(strong_lattice, 4, grid=linear_grid(2000.0, 2001)),
    }


@pytest.fixture(scope="session")
def small_strong_lattice():
    """7-site companion at C = 0.3 for the size-independence comparison."""
    params = ModelParams(a4=0.2, c=0.3, n=7, ncut=6)
    return solve_bands(params, alphas=[1, 4])


@pytest.fixture(scope="session")
def small_strong_runs(small_strong_lattice):
    return {
        1: run_breather(small_strong_lattice, 1, grid=linear_grid(1000.0, 4001)),
        4: run_breather(small_strong_lattice, 4, grid=linear_grid(2000.0, 2001)),
    }


@pytest.fixture(scope="session")
def harmonic_dispersions():
    """(qs, per-sector energies) of the A4 = 0 lattice for each cutoff."""
    out = {}
    for ncut in (2, 4, 6):
        params = ModelParams(a4=0.0, c=0.1, n=13, ncut=ncut)
        spectrum = solve_bands(params, alphas=[])
        out[ncut] = (spectrum.qs, spectrum.energies)
    return out
