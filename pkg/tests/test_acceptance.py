"""Acceptance gate: nine end-to-end criteria, one pass/fail line each.

The heavy 13-site solves are shared session fixtures (see conftest.py).
Every tolerance window is asserted verbatim with the measured value in the
failure message, so a red line documents exactly what was observed.
"""

import math

import numpy as np

from kglattice.bands import (band_statistics, lowest_excitation_dispersion,
                             solve_bands)
from kglattice.breather import band_expansions, linear_grid, run_breather
from kglattice.onsite import ModelParams, semiclassical_levels, solve_onsite
from kglattice.oracle import (dense_hamiltonian, direct_evolution,
                              sparse_hamiltonian)


def test_a1_harmonic_limit_dispersion(harmonic_dispersions):
    """A4=0, C=0.1, N=13: the lowest excitation must approach
    sqrt(1 + 2C cos q), below 1e-3 at Ncut=6 and monotonically in Ncut."""
    devs = {}
    for ncut, (qs, energies) in harmonic_dispersions.items():
        _, excitation = lowest_excitation_dispersion(energies)
        expected = np.sqrt(1.0 + 0.2 * np.cos(qs))
        devs[ncut] = float(np.max(np.abs(excitation - expected)))
    assert devs[6] < 1e-3, f"max deviation at ncut=6 is {devs[6]:.3e}"
    assert devs[2] > devs[4] > devs[6], f"not monotone in ncut: {devs}"


def test_a2_semiclassical_agreement():
    """Action quantization vs exact levels: n=2..8 within 3% and improving
    with n for A4 in {0.2, 0.4}; exact to 1e-8 in the harmonic limit."""
    for a4 in (0.2, 0.4):
        gamma = solve_onsite(ModelParams(a4=a4, c=0.0, n=2, ncut=9)).gamma
        semi = semiclassical_levels(0.0, a4, 8)
        rel = np.abs(semi[2:9] - gamma[2:9]) / gamma[2:9]
        assert np.all(rel < 0.03), f"a4={a4}: relative errors {rel}"
        assert np.all(np.diff(rel) < 0), f"a4={a4}: not decreasing: {rel}"
    gamma0 = solve_onsite(ModelParams(a4=0.0, c=0.0, n=2, ncut=9)).gamma
    semi0 = semiclassical_levels(0.0, 0.0, 8)
    dev = np.max(np.abs(semi0 - gamma0[:9]))
    assert dev < 1e-8, f"harmonic-limit deviation {dev:.3e}"


def test_a3_band_width_hierarchy(weak_lattice):
    """A4=0.2, C=0.05, N=13, Ncut=6: widths fall by roughly an order of
    magnitude per extra bound phonon."""
    widths = {alpha: band_statistics(weak_lattice.bands[alpha])[0]
              for alpha in (1, 2, 3, 4)}
    assert 0.03 <= widths[1] <= 0.12, \
        f"width(1) = {widths[1]:.6e} outside [0.03, 0.12]"
    assert widths[2] < 0.01, f"width(2) = {widths[2]:.6e} not below 0.01"
    assert 3e-4 <= widths[3] <= 3e-3, \
        f"width(3) = {widths[3]:.6e} outside [3e-4, 3e-3]"
    assert 3e-6 <= widths[4] <= 3e-5, \
        f"width(4) = {widths[4]:.6e} outside [3e-6, 3e-5]"


def test_a4_strong_coupling_widths(strong_lattice):
    """A4=0.2, C=0.3, N=13: the four-phonon band survives, identifiable and
    narrow, even though the spectrum is gapless."""
    band4 = strong_lattice.bands[4]
    assert band4.complete, f"alpha=4 band incomplete: lams={band4.lams}"
    width4, _ = band_statistics(band4)
    width1, _ = band_statistics(strong_lattice.bands[1])
    assert 0.015 <= width4 <= 0.06, \
        f"width(4) = {width4:.6e} outside [0.015, 0.06]"
    assert 0.3 <= width1 <= 0.6, \
        f"width(1) = {width1:.6e} outside [0.3, 0.6]"


def test_a5_weak_coupling_lifetimes(weak_runs):
    """A4=0.2, C=0.05, N=13: lifetimes grow by roughly an order of magnitude
    per bound phonon, three orders between alpha=1 and alpha=4."""
    tau = {alpha: weak_runs[alpha].lifetime for alpha in (1, 2, 3, 4)}
    assert all(math.isfinite(t) for t in tau.values()), f"lifetimes {tau}"
    assert 20 <= tau[1] <= 80, f"tau(1) = {tau[1]:.4g} outside [20, 80]"
    assert 5 <= tau[2] / tau[1] <= 20, \
        f"tau(2)/tau(1) = {tau[2] / tau[1]:.4g} outside [5, 20]"
    assert 5 <= tau[3] / tau[2] <= 20, \
        f"tau(3)/tau(2) = {tau[3] / tau[2]:.4g} outside [5, 20]"
    assert 300 <= tau[4] / tau[1] <= 3000, \
        f"tau(4)/tau(1) = {tau[4] / tau[1]:.4g} outside [300, 3000]"


def test_a6_strong_coupling_lifetimes(strong_runs):
    """A4=0.2, C=0.3, N=13: every lifetime collapses by orders of magnitude
    relative to weak coupling."""
    tau1 = strong_runs[1].lifetime
    tau4 = strong_runs[4].lifetime
    assert 2 <= tau1 <= 8, f"tau(1) = {tau1:.4g} outside [2, 8]"
    assert 30 <= tau4 <= 300, f"tau(4) = {tau4:.4g} outside [30, 300]"


def test_a7_oracle_equivalence():
    """For every (N <= 4, Ncut <= 3, A4, C) combination: sector spectra match
    the dense spectra to 1e-10 as multisets, and the band-evolution kinetic
    energies match direct dense evolution to 1e-8 over 50 time points."""
    grid = linear_grid(10.0, 50)
    for n in (2, 3, 4):
        for ncut in (1, 2, 3):
            for a4 in (0.0, 0.2):
                for c in (0.0, 0.05, 0.3):
                    params = ModelParams(a4=a4, c=c, n=n, ncut=ncut)
                    spectrum = solve_bands(params, alphas=[1])
                    dense = dense_hamiltonian(n, ncut, spectrum.onsite, c,
                                              basis=spectrum.basis)
                    merged = np.sort(np.concatenate(spectrum.energies))
                    dev = np.max(np.abs(merged - dense.energies))
                    assert dev < 1e-10, \
                        f"multiset mismatch {dev:.3e} at {params}"
                    band = spectrum.bands[1]
                    assert band.complete, f"alpha=1 incomplete at {params}"
                    run = run_breather(spectrum, 1, grid=grid)
                    weights = (np.exp(-1j * band.qs * run.s0)
                               / math.sqrt(n))
                    w0 = band_expansions(spectrum, band) @ weights
                    direct = direct_evolution(dense, spectrum.onsite, w0,
                                              grid)
                    dev = np.max(np.abs(run.ekin - direct))
                    assert dev < 1e-8, \
                        f"evolution mismatch {dev:.3e} at {params}"


def test_a8_conservation_battery(weak_lattice, strong_lattice, weak_runs,
                                 strong_runs):
    """Every breather run conserves the state norm and <H> = band mean to
    1e-10 (checked in configuration space); C=0 runs are exactly stationary."""
    for spectrum, runs in ((weak_lattice, weak_runs),
                           (strong_lattice, strong_runs)):
        hamiltonian = sparse_hamiltonian(spectrum.basis, spectrum.onsite,
                                         spectrum.params.c)
        for alpha, run in sorted(runs.items()):
            expansions = band_expansions(spectrum, spectrum.bands[alpha])
            samples = run.times[:: max(1, run.times.size // 8)]
            for t in samples:
                z = np.exp(-1j * (run.qs * run.s0 + run.band_energies * t))
                state = expansions @ (z / math.sqrt(run.n_sites))
                norm_dev = abs(np.vdot(state, state).real - 1.0)
                assert norm_dev < 1e-10, \
                    f"alpha={alpha}, t={t}: norm deviation {norm_dev:.3e}"
                energy = np.vdot(state, hamiltonian @ state).real
                energy_dev = abs(energy - run.mean_energy)
                assert energy_dev < 1e-10, \
                    f"alpha={alpha}, t={t}: <H> deviation {energy_dev:.3e}"
        del hamiltonian
    flat_params = ModelParams(a4=0.2, c=0.0, n=5, ncut=4)
    flat = run_breather(solve_bands(flat_params, alphas=[2]), 2,
                        grid=linear_grid(50.0, 26))
    variation = np.max(np.ptp(flat.ekin, axis=0))
    assert variation < 1e-10, \
        f"C=0 run not stationary: max variation {variation:.3e}"


def test_a9_size_independence_and_recurrence(strong_runs, small_strong_runs):
    """At C=0.3 the lifetimes agree within a factor 2 between N=7 and N=13,
    while the first recurrence arrives strictly sooner on the small lattice
    (none found on the large one counts as arriving later than the horizon)."""
    for alpha in (1, 4):
        ratio = small_strong_runs[alpha].lifetime / strong_runs[alpha].lifetime
        assert 0.5 <= ratio <= 2.0, \
            f"alpha={alpha}: tau(N=7)/tau(N=13) = {ratio:.4g}"
    rec_small = small_strong_runs[1].recurrences
    rec_big = strong_runs[1].recurrences
    assert rec_small.size > 0, "no recurrence found for N=7 by t=1000"
    first_big = rec_big[0] if rec_big.size else math.inf
    assert rec_small[0] < first_big, \
        f"first recurrences: N=7 at {rec_small[0]:.4g}, N=13 at {first_big:.4g}"
