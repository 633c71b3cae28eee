"""On-site oscillator: frozen converged levels, independent grid oracle,
action quantization."""

import math
import warnings

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.linalg import eig_banded
from scipy.optimize import brentq

from kglattice.onsite import (
    ModelParams,
    PhysicalParams,
    action_integral,
    build_oscillator_operators,
    reduce_physical,
    semiclassical_levels,
    solve_onsite,
    well_potential,
)

# converged ladder-basis levels (dim=160; dim=80 agrees to ~1e-12)
GAMMA_A4_02 = np.array([
    0.6024051636862499, 1.9505435256351626, 3.5362993632354707,
    5.291268542590349, 7.184456293009938, 9.196339507035795,
    11.313238526463726, 13.524907026875637, 15.823319030455968,
])
GAMMA_A3_A4 = np.array([  # a3=-0.1, a4=0.2
    0.5989618642604098, 1.9376430377102138, 3.514908372931704,
    5.2622581035716385, 7.148432172348725, 9.153756387825892,
    11.264454441671777, 13.4702139497199, 15.762961411402173,
])
SEMI_A4_02 = np.array([
    0.560783977242393, 1.9297851979939806, 3.521005642651585,
    5.278926776631371, 7.173970441184997, 9.187145367559587,
    11.305003096207784, 13.517415830438136, 15.816425038903688,
])


def test_reduce_physical_example():
    phys = PhysicalParams(mass=2.0, a2=5.0, c=1.0, a4=0.3)
    omega, a4, c = reduce_physical(phys)
    assert math.isclose(omega, math.sqrt(3.0), rel_tol=1e-14)
    assert math.isclose(a4, 0.3 / (4.0 * 3.0 * math.sqrt(3.0)), rel_tol=1e-14)
    assert math.isclose(c, 2.0 / 3.0, rel_tol=1e-14)


def test_invalid_stiffness():
    with pytest.raises(ValueError, match="invalid stiffness"):
        PhysicalParams(mass=1.0, a2=2.0, c=1.0)


def test_model_params_validation():
    with pytest.raises(ValueError):
        ModelParams(a4=-0.1, c=0.0, n=4, ncut=2)
    with pytest.raises(ValueError):
        ModelParams(a4=0.0, c=0.0, n=4, ncut=2, a3=0.5)
    with pytest.raises(ValueError):
        ModelParams(a4=0.2, c=0.0, n=1, ncut=2)
    with pytest.raises(ValueError):
        ModelParams(a4=0.2, c=0.0, n=4, ncut=0)
    with pytest.raises(ValueError):
        ModelParams(a4=0.2, c=0.0, n=4, ncut=6, dim=8)
    assert ModelParams(a4=0.2, c=0.05, n=13, ncut=6).dim == 40
    assert ModelParams(a4=0.2, c=0.05, n=13, ncut=12).dim == 48


def test_oscillator_operator_elements():
    ops = build_oscillator_operators(12)
    n = np.arange(12)
    assert np.allclose(np.diag(ops.x, 1), np.sqrt((n[:-1] + 1) / 2.0), atol=1e-15)
    assert np.allclose(np.diag(ops.p2), n + 0.5, atol=1e-15)
    assert np.allclose(np.diag(ops.p2, 2),
                       -np.sqrt((n[:-2] + 1.0) * (n[:-2] + 2.0)) / 2.0, atol=1e-15)
    # powering in the enlarged basis keeps the top-left block exact
    big = build_oscillator_operators(20)
    assert np.allclose(ops.x4, big.x4[:12, :12], atol=1e-13)
    assert np.allclose(ops.x3, big.x3[:12, :12], atol=1e-13)


def test_harmonic_levels_exact():
    sol = solve_onsite(ModelParams(a4=0.0, c=0.0, n=2, ncut=6), check_convergence=False)
    assert np.allclose(sol.gamma[:20], np.arange(20) + 0.5, atol=1e-12)
    n = np.arange(10)
    assert np.allclose(np.diag(sol.xtilde, 1)[:10], np.sqrt((n + 1) / 2.0), atol=1e-12)


def test_quartic_levels_frozen():
    sol = solve_onsite(ModelParams(a4=0.2, c=0.0, n=2, ncut=6, dim=160),
                       check_convergence=False)
    assert np.max(np.abs(sol.gamma[:9] - GAMMA_A4_02)) < 1e-11
    assert sol.gamma[1] - sol.gamma[0] > 1.0  # hard quartic raises spacings
    sol3 = solve_onsite(ModelParams(a4=0.2, c=0.0, n=2, ncut=6, a3=-0.1, dim=160),
                        check_convergence=False)
    assert np.max(np.abs(sol3.gamma[:9] - GAMMA_A3_A4)) < 1e-11


def test_quartic_levels_grid_oracle():
    # independent route: 5-point finite-difference grid Schrodinger solve
    npts, L = 9001, 9.0
    x = np.linspace(-L, L, npts)
    h = x[1] - x[0]
    bands = np.zeros((3, npts))
    bands[0] = well_potential(x, 0.0, 0.2) + 30.0 / (24.0 * h * h)
    bands[1] = -16.0 / (24.0 * h * h)
    bands[2] = 1.0 / (24.0 * h * h)
    w = eig_banded(bands, lower=True, eigvals_only=True, select="i",
                   select_range=(0, 8))
    assert np.max(np.abs(w - GAMMA_A4_02)) < 1e-8


def test_solution_structure():
    sol = solve_onsite(ModelParams(a4=0.2, c=0.0, n=2, ncut=4), check_convergence=False)
    d = sol.dim
    assert np.allclose(sol.u.T @ sol.u, np.eye(d), atol=1e-12)
    assert np.allclose(sol.xtilde, sol.xtilde.T, atol=1e-13)
    assert np.allclose(sol.khalf, sol.khalf.T, atol=1e-13)
    assert np.all(np.diff(sol.gamma) > 0)
    # frozen spot values, dim-converged
    assert abs(sol.xtilde[0, 1] - 0.6079420154133293) < 1e-9


def test_convergence_warning_default_dim():
    # at a4=0.2 the dim=40 default is not converged to 1e-10 through ncut+2
    with pytest.warns(UserWarning, match="not converged"):
        solve_onsite(ModelParams(a4=0.2, c=0.0, n=2, ncut=6))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        solve_onsite(ModelParams(a4=0.2, c=0.0, n=2, ncut=6, dim=80))


def _action_quad(energy, a3, a4):
    resid = lambda x: well_potential(x, a3, a4) - energy
    xr = brentq(resid, 0.0, 100.0)
    xl = brentq(resid, -100.0, 0.0)
    val, _ = quad(lambda x: math.sqrt(max(2.0 * (energy - well_potential(x, a3, a4)), 0.0)),
                  xl, xr, limit=400, epsabs=1e-13, epsrel=1e-13)
    return val / math.pi


@pytest.mark.parametrize("energy,a3,a4", [
    (0.5, 0.0, 0.2), (3.7, 0.0, 0.2), (11.0, 0.0, 0.2), (2.5, -0.1, 0.2),
])
def test_action_integral_against_quad(energy, a3, a4):
    assert abs(action_integral(energy, a3, a4) - _action_quad(energy, a3, a4)) < 1e-12


def test_action_integral_harmonic_identity():
    for energy in (0.5, 1.5, 7.25):
        assert abs(action_integral(energy) - energy) < 1e-13


def test_semiclassical_levels_frozen():
    lv = semiclassical_levels(0.0, 0.2, 8)
    assert np.max(np.abs(lv - SEMI_A4_02)) < 1e-9


def test_semiclassical_harmonic_exact():
    lv = semiclassical_levels(0.0, 0.0, 5)
    assert np.max(np.abs(lv - (np.arange(6) + 0.5))) < 1e-8


def test_semiclassical_matches_quantum():
    rel = np.abs(SEMI_A4_02 - GAMMA_A4_02) / GAMMA_A4_02
    assert np.all(rel[2:] < 0.03)
    assert rel[8] < rel[2]


def test_unsupported_potential_shape():
    # secondary minimum splits the allowed region below the barrier top
    with pytest.raises(ValueError, match="unsupported potential shape"):
        action_integral(0.01, a3=-1.0, a4=0.1)
    with pytest.raises(ValueError, match="energy must be positive"):
        action_integral(-1.0, 0.0, 0.2)
