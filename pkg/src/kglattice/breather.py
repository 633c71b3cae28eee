"""Quantum-breather dynamics: Wannier state over a bound band, site-resolved
kinetic energies, lifetime and recurrence extraction."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bands import BoundBand, LatticeSpectrum, single_excitation_config
from .symbasis import ExcitationBasis, MomentumSector, site_operator


def expand_to_configurations(vector: np.ndarray, sector: MomentumSector) -> np.ndarray:
    """Inverse Bloch symmetrization: sector amplitudes -> configuration
    amplitudes e^{iq s}/sqrt(p) placed on every translate (s is the
    canonicalizing shift of the translate). Unit norm is preserved."""
    basis = sector.basis
    pos_all = sector.orbit_pos[basis.orbit_of]
    mask = pos_all >= 0
    out = np.zeros(basis.n_config, dtype=complex)
    periods = basis.periods[basis.orbit_of[mask]].astype(float)
    out[mask] = (vector[pos_all[mask]]
                 * np.exp(1j * sector.q * basis.shift_of[mask])
                 / np.sqrt(periods))
    return out


def band_expansions(spectrum: LatticeSpectrum, band: BoundBand) -> np.ndarray:
    """Configuration-space band eigenstates, one column per momentum."""
    if not band.complete:
        raise ValueError("Wannier undefined: band incomplete")
    cols = [expand_to_configurations(band.vectors[k], spectrum.sectors[k])
            for k in range(spectrum.params.n)]
    return np.column_stack(cols)


def kinetic_cross_elements(spectrum: LatticeSpectrum, band: BoundBand,
                           expansions: np.ndarray | None = None) -> list[np.ndarray]:
    """K_j[k', k] = <psi_alpha(q')| P_j^2/2 |psi_alpha(q)> for every site j,
    by config-space contraction of the expanded band states."""
    if expansions is None:
        expansions = band_expansions(spectrum, band)
    basis = spectrum.basis
    khalf = spectrum.onsite.khalf
    kinetic = []
    for j in range(basis.n):
        op = site_operator(basis, j, khalf).matrix
        kj = expansions.conj().T @ (op @ expansions)
        dev = np.max(np.abs(kj - kj.conj().T))
        if dev > 1e-12:
            raise RuntimeError(
                f"internal consistency error: K_{j} not Hermitian ({dev:.3e})")
        kinetic.append(kj)
    return kinetic


def center_shift(basis: ExcitationBasis, alpha: int, center: int) -> int:
    """Canonicalizing shift of the single-excitation configuration at the
    center site; using it as the Wannier phase multiplier pins the C=0
    profile peak exactly at the requested site."""
    cfg = np.zeros(basis.n, dtype=np.int32)
    cfg[center] = alpha
    return int(basis.shift_of[basis.index_of(cfg)[0]])


@dataclass
class BreatherRun:
    """Site-time kinetic-energy field of an evolving Wannier state, plus the
    ingredients needed to re-evaluate it at arbitrary times."""

    alpha: int
    center: int
    times: np.ndarray
    ekin: np.ndarray          # shape (n_times, n_sites)
    mean_energy: float
    qs: np.ndarray
    band_energies: np.ndarray
    kinetic: list[np.ndarray]
    s0: int
    gauge: str
    lifetime: float | None = None
    recurrences: np.ndarray | None = None

    @property
    def n_sites(self) -> int:
        return self.ekin.shape[1]


def _ekin_at(run_qs, band_energies, kinetic, s0, times) -> np.ndarray:
    n = run_qs.size
    z = np.exp(-1j * (np.multiply.outer(np.asarray(times, dtype=float), band_energies)
                      + run_qs * s0))
    out = np.empty((z.shape[0], n))
    for j, kj in enumerate(kinetic):
        vals = np.einsum("tk,kl,tl->t", z.conj(), kj, z)
        if np.max(np.abs(vals.imag)) > 1e-10:
            raise RuntimeError("kinetic energy imaginary residue exceeds 1e-10 "
                               "(gauge or Hermiticity bug)")
        out[:, j] = vals.real / n
    return out


def evolve_breather(kinetic: list[np.ndarray], band: BoundBand, center: int,
                    grid: np.ndarray, basis: ExcitationBasis) -> BreatherRun:
    """E_kin[t, j] = (1/N) sum_{k,k'} K_j[k',k] e^{-i((q-q')s0 + (E-E')t)}
    with the center entering through its canonical shift s0."""
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty time grid")
    if not band.complete:
        raise ValueError("Wannier undefined: band incomplete")
    n = basis.n
    if not 0 <= center < n:
        raise ValueError(f"center site {center} outside 0..{n - 1}")
    s0 = center_shift(basis, band.alpha, center)
    ekin = _ekin_at(band.qs, band.energies, kinetic, s0, grid)
    return BreatherRun(alpha=band.alpha, center=center, times=grid, ekin=ekin,
                       mean_energy=float(band.energies.mean()), qs=band.qs,
                       band_energies=band.energies, kinetic=kinetic, s0=s0,
                       gauge=band.gauge)


def _contrast_parts(ekin: np.ndarray, center: int):
    others = np.delete(np.arange(ekin.shape[1]), center)
    return ekin[:, center] - ekin[:, others].mean(axis=1)


def contrast(run: BreatherRun) -> np.ndarray:
    """rho(t): central-site kinetic-energy excess over the lattice-average
    background, normalized to 1 at t=0."""
    excess = _contrast_parts(run.ekin, run.center)
    if excess[0] <= 0.0:
        raise ValueError("no initial localization")
    return excess / excess[0]


def _contrast_at(run: BreatherRun, t: float, denom: float) -> float:
    ekin = _ekin_at(run.qs, run.band_energies, run.kinetic, run.s0, [t])
    return float(_contrast_parts(ekin, run.center)[0]) / denom


def lifetime(run: BreatherRun, threshold: float = 0.5) -> float:
    """First time the contrast falls to `threshold`, refined by bisection
    between the bracketing grid points; +inf if never crossed on the grid."""
    rho = contrast(run)
    denom = float(_contrast_parts(run.ekin, run.center)[0])
    below = np.flatnonzero(rho <= threshold)
    if below.size == 0:
        return math.inf
    i = int(below[0])
    if i == 0:
        return float(run.times[0])
    lo, hi = float(run.times[i - 1]), float(run.times[i])
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _contrast_at(run, mid, denom) <= threshold:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-9 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def recurrence_events(run: BreatherRun, threshold: float = 0.5) -> np.ndarray:
    """Times of local contrast maxima exceeding `threshold` after the
    lifetime crossing; empty when the state never decays on the grid."""
    tau = run.lifetime if run.lifetime is not None else lifetime(run, threshold)
    if not math.isfinite(tau):
        return np.empty(0)
    rho = contrast(run)
    t = run.times
    inner = np.arange(1, t.size - 1)
    peaks = inner[(rho[inner] > rho[inner - 1]) & (rho[inner] > rho[inner + 1])
                  & (rho[inner] > threshold) & (t[inner] > tau)]
    return t[peaks]


def linear_grid(t_max: float, steps: int) -> np.ndarray:
    if t_max <= 0.0 or steps < 2:
        raise ValueError("need t_max > 0 and at least 2 grid points")
    return np.linspace(0.0, t_max, steps)


def geometric_grid(t_max: float, steps: int, decades: float = 5.0) -> np.ndarray:
    """t=0 followed by log-spaced points over `decades` up to t_max."""
    if t_max <= 0.0 or steps < 2 or decades <= 0.0:
        raise ValueError("need t_max > 0, decades > 0 and at least 2 grid points")
    tail = np.logspace(math.log10(t_max) - decades, math.log10(t_max), steps - 1)
    return np.concatenate(([0.0], tail))


def run_breather(spectrum: LatticeSpectrum, alpha: int, center: int | None = None,
                 grid: np.ndarray | None = None,
                 contrast_threshold: float = 0.5) -> BreatherRun:
    """Full pipeline for one band: cross elements, evolution, lifetime and
    recurrences."""
    if alpha not in spectrum.bands:
        raise ValueError(f"band for alpha={alpha} was not computed")
    band = spectrum.bands[alpha]
    if center is None:
        center = spectrum.params.n // 2
    if grid is None:
        grid = linear_grid(100.0, 201)
    kinetic = kinetic_cross_elements(spectrum, band)
    run = evolve_breather(kinetic, band, center, grid, spectrum.basis)
    run.lifetime = lifetime(run, contrast_threshold)
    run.recurrences = recurrence_events(run, contrast_threshold)
    return run
