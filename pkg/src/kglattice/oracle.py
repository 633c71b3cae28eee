"""Brute-force validation on the full configuration space (small lattices):
dense Hamiltonian without momentum symmetrization, direct time evolution."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .onsite import OnSiteSolution
from .symbasis import (
    ExcitationBasis,
    bond_operator,
    build_basis,
    onsite_energies,
    site_operator,
)

MAX_DENSE_DIM = 20_000


@dataclass(frozen=True)
class DenseProblem:
    basis: ExcitationBasis
    matrix: np.ndarray
    energies: np.ndarray
    vectors: np.ndarray


def dense_hamiltonian(n: int, ncut: int, onsite: OnSiteSolution, coupling: float,
                      basis: ExcitationBasis | None = None) -> DenseProblem:
    """Full-space H = diag(sum_i gamma) + coupling * sum_l X_l X_{l+1}
    (periodic wrap; for n=2 the single bond is counted twice, matching the
    sector path)."""
    if basis is None:
        basis = build_basis(n, ncut)
    if basis.n_config > MAX_DENSE_DIM:
        raise ValueError(
            f"dense oracle dimension {basis.n_config} exceeds guard {MAX_DENSE_DIM}")
    h = np.diag(onsite_energies(basis, onsite.gamma))
    if coupling != 0.0:
        xt = onsite.xtilde
        for site in range(n):
            op = bond_operator(basis, site, (site + 1) % n, xt, xt).matrix
            h += coupling * op.toarray()
    asym = np.max(np.abs(h - h.T)) if h.size else 0.0
    if asym > 1e-12:
        raise RuntimeError(f"internal consistency error: dense H asymmetry {asym:.3e}")
    energies, vectors = np.linalg.eigh(h)
    return DenseProblem(basis=basis, matrix=h, energies=energies, vectors=vectors)


def kinetic_site_operators(basis: ExcitationBasis,
                           onsite: OnSiteSolution) -> list[sparse.csr_matrix]:
    """Config-space P_j^2/2 for every site j."""
    return [site_operator(basis, j, onsite.khalf).matrix for j in range(basis.n)]


def sparse_hamiltonian(basis: ExcitationBasis, onsite: OnSiteSolution,
                       coupling: float) -> sparse.csr_matrix:
    """Full-space H as a sparse matrix (no size guard); same operator content
    as dense_hamiltonian, usable at lattice sizes the dense path refuses."""
    h = sparse.diags(onsite_energies(basis, onsite.gamma)).tocsr()
    if coupling != 0.0:
        xt = onsite.xtilde
        for site in range(basis.n):
            bond = bond_operator(basis, site, (site + 1) % basis.n, xt, xt)
            h = h + coupling * bond.matrix
    return h.tocsr()


def direct_evolution(dense: DenseProblem, onsite: OnSiteSolution, w0: np.ndarray,
                     grid: np.ndarray) -> np.ndarray:
    """Exact eigenbasis evolution of the configuration-space state w0;
    returns site-resolved kinetic energies, shape (len(grid), n)."""
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty time grid")
    norm = np.linalg.norm(w0)
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"initial state norm deviates from 1 by {abs(norm - 1.0):.3e}")
    coeffs = dense.vectors.T @ w0
    kin_ops = kinetic_site_operators(dense.basis, onsite)
    out = np.empty((grid.size, dense.basis.n))
    for it, t in enumerate(grid):
        amp = dense.vectors @ (coeffs * np.exp(-1j * dense.energies * t))
        for j, op in enumerate(kin_ops):
            out[it, j] = np.real(np.vdot(amp, op @ amp))
    return out
