"""Phonon bound-state bands: overlap criterion, band statistics, dispersion
references, and the full-lattice streaming solve."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .onsite import ModelParams, OnSiteSolution, solve_onsite
from .qham import GAUGE_TAG, assemble_qblock, build_image_table, diagonalize_qblock
from .symbasis import ExcitationBasis, MomentumSector, build_basis, build_sector

BAND_GAUGE_TAG = "overlap-with-single-excitation-real-positive"


def single_excitation_config(n: int, alpha: int) -> np.ndarray:
    """Canonical representative of the one-site excitation of order alpha:
    zeros with alpha at the last site (the lexicographic minimum)."""
    cfg = np.zeros(n, dtype=np.int32)
    cfg[-1] = alpha
    return cfg


def single_excitation_index(alpha: int, sector: MomentumSector) -> int:
    """Position of the Bloch wave B_alpha(q) in the sector basis."""
    basis = sector.basis
    if alpha < 1:
        raise ValueError("order beyond cutoff: alpha must be at least 1")
    if alpha > basis.ncut:
        raise ValueError(f"order beyond cutoff: alpha={alpha} > ncut={basis.ncut}")
    cfg_idx = basis.index_of(single_excitation_config(basis.n, alpha))[0]
    pos = sector.orbit_pos[basis.orbit_of[cfg_idx]]
    if pos < 0:
        raise RuntimeError("internal consistency error: single-excitation orbit "
                           "missing from sector")
    return int(pos)


def compute_overlaps(vectors: np.ndarray, sector: MomentumSector, alpha_max: int) -> np.ndarray:
    """V[alpha-1, lam] = |<psi_lam(q)|B_alpha(q)>| for alpha = 1..alpha_max.

    The sector Bloch basis is orthonormal, so the overlap is the modulus of
    the eigenvector amplitude on the single-excitation index.
    """
    rows = [single_excitation_index(a, sector) for a in range(1, alpha_max + 1)]
    return np.abs(vectors[rows, :])


@dataclass
class BoundBand:
    """Per-k identified alpha-phonon bound states (lam = -1 where none)."""

    alpha: int
    threshold: float
    qs: np.ndarray
    lams: np.ndarray
    energies: np.ndarray
    overlaps: np.ndarray
    vectors: list | None = None
    gauge: str = BAND_GAUGE_TAG

    @property
    def complete(self) -> bool:
        return bool(np.all(self.lams >= 0))


def select_band_state(overlap_row: np.ndarray, threshold: float, alpha: int, k: int) -> int:
    """Index of the best candidate above threshold, or -1; warns on ties."""
    above = np.flatnonzero(overlap_row > threshold)
    if above.size == 0:
        return -1
    if above.size > 1:
        warnings.warn(
            f"multiple candidates above threshold for alpha={alpha} at k={k}",
            stacklevel=2)
    return int(above[np.argmax(overlap_row[above])])


def identify_band(overlaps: list[np.ndarray], spectra: list, alpha: int,
                  threshold: float = 0.5, sectors: list | None = None) -> BoundBand:
    """Assemble the alpha-phonon band from per-k overlap tables and spectra.

    Per k the state maximizing V among those with V > threshold is selected;
    the band is incomplete (lam = -1) wherever no state qualifies. When the
    sectors are supplied, selected eigenvectors are re-gauged so the overlap
    amplitude is real positive.
    """
    n = len(spectra)
    lams = np.full(n, -1, dtype=int)
    energies = np.full(n, np.nan)
    found_overlap = np.zeros(n)
    qs = np.empty(n)
    vectors = []
    for k, (table, spectrum) in enumerate(zip(overlaps, spectra)):
        qs[k] = spectrum.q
        lam = select_band_state(table[alpha - 1], threshold, alpha, k)
        if lam < 0:
            vectors.append(None)
            continue
        lams[k] = lam
        energies[k] = spectrum.energies[lam]
        found_overlap[k] = table[alpha - 1, lam]
        vec = spectrum.vectors[:, lam]
        if sectors is not None:
            vec = regauge_to_band(vec, single_excitation_index(alpha, sectors[k]))
        vectors.append(vec)
    gauge = BAND_GAUGE_TAG if sectors is not None else getattr(
        spectra[0], "gauge", BAND_GAUGE_TAG)
    return BoundBand(alpha=alpha, threshold=threshold, qs=qs, lams=lams,
                     energies=energies, overlaps=found_overlap, vectors=vectors,
                     gauge=gauge)


def band_statistics(band: BoundBand) -> tuple[float, float]:
    """(width, mean) over the Brillouin zone of a complete band."""
    if not band.complete:
        raise ValueError(f"band incomplete for alpha={band.alpha}")
    return float(band.energies.max() - band.energies.min()), float(band.energies.mean())


def dispersion_compare(coupling: float, q_list: np.ndarray) -> np.ndarray:
    """Analytic single-phonon branches: columns (1 + C cos q,
    sqrt(1 + 2C cos q))."""
    q = np.asarray(q_list, dtype=float)
    radicand = 1.0 + 2.0 * coupling * np.cos(q)
    if np.any(radicand <= 0.0):
        raise ValueError("unstable harmonic chain: 1 + 2C cos q not positive")
    return np.column_stack((1.0 + coupling * np.cos(q), np.sqrt(radicand)))


def lowest_excitation_dispersion(energies_per_k: list[np.ndarray]) -> tuple[float, np.ndarray]:
    """(ground energy, per-k lowest excitation energy above the ground state).

    The global ground state sits in one sector; in that sector the second
    eigenvalue is the excitation. Used for the harmonic-limit dispersion
    check, where the overlap criterion degrades.
    """
    mins = np.array([e[0] for e in energies_per_k])
    k_ground = int(np.argmin(mins))
    e0 = float(mins[k_ground])
    exc = np.array([e[1] if k == k_ground else e[0]
                    for k, e in enumerate(energies_per_k)])
    return e0, exc - e0


@dataclass
class LatticeSpectrum:
    """Streamed full-lattice solve: all sector energies, overlap tables, and
    the identified bound bands (with eigenvectors) per requested alpha."""

    params: ModelParams
    onsite: OnSiteSolution
    basis: ExcitationBasis
    sectors: list[MomentumSector]
    energies: list[np.ndarray]
    overlaps: list[np.ndarray]
    bands: dict[int, BoundBand]
    n_projected: int
    gauge: str = GAUGE_TAG
    band_gauge: str = BAND_GAUGE_TAG
    alpha_max: int = field(default=0)

    @property
    def qs(self) -> np.ndarray:
        return np.array([s.q for s in self.sectors])


def regauge_to_band(vector: np.ndarray, pos: int) -> np.ndarray:
    """Rotate the eigenvector phase so its amplitude on the single-excitation
    index is real positive."""
    lead = vector[pos]
    if lead == 0.0:
        return vector
    return vector * (lead.conj() / abs(lead))


def solve_bands(params: ModelParams, alphas=None, threshold: float = 0.5,
                onsite: OnSiteSolution | None = None) -> LatticeSpectrum:
    """Assemble, diagonalize and band-identify every momentum sector.

    Sectors are processed one at a time: full eigenvector matrices are
    dropped once the overlap rows and identified band columns are extracted,
    keeping the memory footprint linear in the sector dimension.
    """
    if onsite is None:
        onsite = solve_onsite(params)
    if alphas is None:
        alphas = list(range(1, min(params.ncut, 4) + 1))
    alphas = sorted(set(int(a) for a in alphas))
    if alphas and (alphas[0] < 1 or alphas[-1] > params.ncut):
        raise ValueError("order beyond cutoff in requested alpha list")
    alpha_max = alphas[-1] if alphas else 0

    basis = build_basis(params.n, params.ncut)
    table = build_image_table(basis, onsite)
    sectors = []
    energies = []
    overlap_tables = []
    n_projected = table.n_projected
    per_alpha: dict[int, dict] = {
        a: {"lams": np.full(params.n, -1, dtype=int),
            "energies": np.full(params.n, np.nan),
            "overlaps": np.zeros(params.n),
            "vectors": [None] * params.n}
        for a in alphas}
    qs = np.empty(params.n)

    for k in range(params.n):
        sector = build_sector(basis, k)
        block = assemble_qblock(sector, onsite, params.c, table)
        spectrum = diagonalize_qblock(block)
        sectors.append(sector)
        energies.append(spectrum.energies)
        qs[k] = spectrum.q
        table_k = (compute_overlaps(spectrum.vectors, sector, alpha_max)
                   if alpha_max else np.zeros((0, sector.size)))
        overlap_tables.append(table_k)
        for a in alphas:
            lam = select_band_state(table_k[a - 1], threshold, a, k)
            if lam < 0:
                continue
            slot = per_alpha[a]
            slot["lams"][k] = lam
            slot["energies"][k] = spectrum.energies[lam]
            slot["overlaps"][k] = table_k[a - 1, lam]
            pos = single_excitation_index(a, sector)
            slot["vectors"][k] = regauge_to_band(spectrum.vectors[:, lam], pos)
        del spectrum, block

    bands = {a: BoundBand(alpha=a, threshold=threshold, qs=qs.copy(),
                          lams=slot["lams"], energies=slot["energies"],
                          overlaps=slot["overlaps"], vectors=slot["vectors"])
             for a, slot in per_alpha.items()}
    return LatticeSpectrum(params=params, onsite=onsite, basis=basis,
                           sectors=sectors, energies=energies,
                           overlaps=overlap_tables, bands=bands,
                           n_projected=n_projected, alpha_max=alpha_max)
