"""Momentum-sector Hamiltonian blocks: assembly and diagonalization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .onsite import OnSiteSolution
from .symbasis import ExcitationBasis, MomentumSector, bond_operator, onsite_energies


@dataclass(frozen=True)
class ImageTable:
    """Momentum-independent bond-term images of all orbit representatives.

    Row i records one transition rep(src_orbit) -> config in dst_orbit: the
    canonicalizing shift of the image and the amplitude h*sqrt(p_src/p_dst)
    ready for the Bloch phase e^{-i q shift}.
    """

    src_orbit: np.ndarray
    dst_orbit: np.ndarray
    shift: np.ndarray
    coef: np.ndarray
    n_projected: int


def build_image_table(basis: ExcitationBasis, onsite: OnSiteSolution) -> ImageTable:
    """Apply sum_l X_l X_{l+1} (periodic) to every orbit representative."""
    xt = onsite.xtilde
    reps = basis.orbit_reps
    src_parts, dst_parts, shift_parts, coef_parts = [], [], [], []
    dropped = 0
    for site in range(basis.n):
        op, n_proj = bond_operator(basis, site, (site + 1) % basis.n, xt, xt,
                                   sources=reps)
        dropped += n_proj
        coo = op.tocoo()
        src_parts.append(coo.col)
        dst_parts.append(basis.orbit_of[coo.row])
        shift_parts.append(basis.shift_of[coo.row])
        coef_parts.append(coo.data)
    src = np.concatenate(src_parts)
    dst = np.concatenate(dst_parts)
    shift = np.concatenate(shift_parts)
    coef = np.concatenate(coef_parts)
    coef = coef * np.sqrt(basis.periods[src] / basis.periods[dst].astype(float))
    return ImageTable(src_orbit=src, dst_orbit=dst, shift=shift, coef=coef,
                      n_projected=dropped)


@dataclass(frozen=True)
class QBlock:
    k: int
    q: float
    matrix: np.ndarray
    n_projected: int


def assemble_qblock(sector: MomentumSector, onsite: OnSiteSolution, coupling: float,
                    table: ImageTable | None = None) -> QBlock:
    """H_q = diag(sum_i gamma[alpha_i]) + coupling * K(q) on the admitted
    representatives; bond images are folded back with phase e^{-i q shift}
    and the sqrt(p/p') normalization ratio."""
    basis = sector.basis
    if onsite.dim <= basis.ncut + 2:
        raise ValueError("on-site truncation too small for this cutoff")
    if table is None:
        table = build_image_table(basis, onsite)
    size = sector.size
    h = np.zeros((size, size), dtype=complex)
    if coupling != 0.0 and table.src_orbit.size:
        src_pos = sector.orbit_pos[table.src_orbit]
        dst_pos = sector.orbit_pos[table.dst_orbit]
        keep = (src_pos >= 0) & (dst_pos >= 0)
        amp = coupling * table.coef[keep] * np.exp(-1j * sector.q * table.shift[keep])
        np.add.at(h, (dst_pos[keep], src_pos[keep]), amp)
    diag = onsite_energies(basis, onsite.gamma, rows=sector.rep_idx)
    h[np.arange(size), np.arange(size)] += diag
    hermiticity = np.max(np.abs(h - h.conj().T)) if size else 0.0
    if hermiticity > 1e-12:
        raise RuntimeError(
            f"internal consistency error: block k={sector.k} not Hermitian "
            f"(deviation {hermiticity:.3e})")
    return QBlock(k=sector.k, q=sector.q, matrix=h, n_projected=table.n_projected)


GAUGE_TAG = "max-amplitude-real-positive"


@dataclass(frozen=True)
class SpectrumBlock:
    k: int
    q: float
    energies: np.ndarray
    vectors: np.ndarray
    gauge: str = GAUGE_TAG


def diagonalize_qblock(block: QBlock) -> SpectrumBlock:
    """Dense Hermitian solve; ascending eigenvalues; per-column phase fixed so
    the largest-magnitude amplitude is real positive."""
    try:
        energies, vectors = np.linalg.eigh(block.matrix)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigensolver failed in sector k={block.k}") from exc
    idx = np.argmax(np.abs(vectors), axis=0)
    lead = vectors[idx, np.arange(vectors.shape[1])]
    phases = lead / np.abs(lead)
    vectors = vectors * phases.conj()
    return SpectrumBlock(k=block.k, q=block.q, energies=energies, vectors=vectors)
