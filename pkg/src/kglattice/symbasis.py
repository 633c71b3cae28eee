"""Excitation configurations, translation orbits and momentum sectors on the
periodic chain."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import NamedTuple

import numpy as np
from scipy import sparse

MAX_CONFIGURATIONS = 5_000_000


def enumerate_configurations(n: int, ncut: int, cap: int = MAX_CONFIGURATIONS) -> np.ndarray:
    """All strings (alpha_0..alpha_{n-1}) of nonnegative integers with total
    sum <= ncut, in lexicographic order; shape (binomial(n+ncut, n), n)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if ncut < 1:
        raise ValueError("ncut must be at least 1")
    count = comb(n + ncut, n)
    if count > cap:
        raise ValueError(f"basis too large: {count} configurations exceed cap {cap}")

    def build(sites: int, budget: int) -> np.ndarray:
        if sites == 1:
            return np.arange(budget + 1, dtype=np.int32).reshape(-1, 1)
        parts = []
        for v in range(budget + 1):
            tail = build(sites - 1, budget - v)
            head = np.full((tail.shape[0], 1), v, dtype=np.int32)
            parts.append(np.hstack((head, tail)))
        return np.vstack(parts)

    configs = build(n, ncut)
    if configs.shape[0] != count:
        raise RuntimeError("internal consistency error: enumeration count mismatch")
    return configs


def _key_weights(n: int, radix: int) -> np.ndarray:
    # mixed-radix place values, most significant digit first (keeps key order
    # equal to lexicographic order)
    if radix**n >= 2**63:
        raise ValueError("configuration key exceeds the 64-bit range")
    return np.array([radix ** (n - 1 - i) for i in range(n)], dtype=np.int64)


def translate(config: np.ndarray, shift: int = 1) -> np.ndarray:
    """Cyclic translation T^shift: (T x)_m = x_{(m+shift) mod n}."""
    return np.roll(config, -shift, axis=-1)


def find_orbits(configs: np.ndarray):
    """Group configurations into cyclic-shift orbits.

    Returns (rep_idx, periods, orbit_of, shift_of): representative config
    indices (lexicographic minima, in enumeration order), their periods,
    and for every config the orbit index plus the smallest shift s with
    T^s(config) = representative.
    """
    n_config, n = configs.shape
    radix = int(configs.max()) + 1
    weights = _key_weights(n, radix)
    c64 = configs.astype(np.int64)
    keys = c64 @ weights
    best = keys.copy()
    shift_of = np.zeros(n_config, dtype=np.int64)
    stabilizer = np.ones(n_config, dtype=np.int64)
    for s in range(1, n):
        shifted = np.roll(c64, -s, axis=1) @ weights
        better = shifted < best
        best[better] = shifted[better]
        shift_of[better] = s
        stabilizer += shifted == keys
    periods_all = n // stabilizer
    rep_idx = np.flatnonzero(keys == best)
    rep_keys = keys[rep_idx]
    orbit_of = np.searchsorted(rep_keys, best)
    return rep_idx, periods_all[rep_idx], orbit_of, shift_of


@dataclass(frozen=True)
class ExcitationBasis:
    """Configuration list with its orbit decomposition and key lookup."""

    n: int
    ncut: int
    configs: np.ndarray
    keys: np.ndarray
    orbit_reps: np.ndarray
    periods: np.ndarray
    orbit_of: np.ndarray
    shift_of: np.ndarray
    weights: np.ndarray = field(repr=False)

    @property
    def n_config(self) -> int:
        return self.configs.shape[0]

    @property
    def n_orbit(self) -> int:
        return self.orbit_reps.shape[0]

    def index_of(self, rows: np.ndarray) -> np.ndarray:
        """Config indices of the given configuration rows (must be in basis)."""
        wanted = np.atleast_2d(rows).astype(np.int64) @ self.weights
        pos = np.searchsorted(self.keys, wanted)
        inside = pos < self.keys.size
        if not np.all(inside) or np.any(self.keys[pos[inside]] != wanted[inside]):
            raise ValueError("configuration outside basis")
        return pos


def build_basis(n: int, ncut: int, cap: int = MAX_CONFIGURATIONS) -> ExcitationBasis:
    configs = enumerate_configurations(n, ncut, cap)
    rep_idx, periods, orbit_of, shift_of = find_orbits(configs)
    weights = _key_weights(n, ncut + 1)
    keys = configs.astype(np.int64) @ weights
    return ExcitationBasis(n=n, ncut=ncut, configs=configs, keys=keys,
                           orbit_reps=rep_idx, periods=periods,
                           orbit_of=orbit_of, shift_of=shift_of, weights=weights)


@dataclass(frozen=True)
class MomentumSector:
    """Orbits admitted at momentum index k (q = 2*pi*k/n), with Bloch
    normalizations A = n^2/p and a reverse orbit -> sector-position map."""

    basis: ExcitationBasis
    k: int
    q: float
    rep_idx: np.ndarray
    periods: np.ndarray
    norms: np.ndarray
    orbit_pos: np.ndarray

    @property
    def size(self) -> int:
        return self.rep_idx.shape[0]


def build_sector(basis: ExcitationBasis, k: int) -> MomentumSector:
    n = basis.n
    if not 0 <= k < n:
        raise ValueError(f"momentum index k={k} outside 0..{n - 1}")
    admitted = (k * basis.periods) % n == 0
    rep_idx = basis.orbit_reps[admitted]
    periods = basis.periods[admitted]
    orbit_pos = np.full(basis.n_orbit, -1, dtype=np.int64)
    orbit_pos[np.flatnonzero(admitted)] = np.arange(rep_idx.size)
    return MomentumSector(basis=basis, k=k, q=2.0 * np.pi * k / n,
                          rep_idx=rep_idx, periods=periods,
                          norms=n**2 / periods.astype(float), orbit_pos=orbit_pos)


def sector_census(basis: ExcitationBasis) -> np.ndarray:
    """Sector sizes for k = 0..n-1; sums to the configuration count."""
    return np.array([np.count_nonzero((k * basis.periods) % basis.n == 0)
                     for k in range(basis.n)])


class ConfigOperator(NamedTuple):
    matrix: sparse.csr_matrix
    n_projected: int  # nonzero transitions dropped by the cutoff


def onsite_energies(basis: ExcitationBasis, gamma: np.ndarray,
                    rows: np.ndarray | None = None) -> np.ndarray:
    """Sum of on-site levels gamma[alpha_i] per configuration."""
    configs = basis.configs if rows is None else basis.configs[rows]
    return gamma[configs].sum(axis=1)


def site_operator(basis: ExcitationBasis, site: int, mat: np.ndarray,
                  sources: np.ndarray | None = None) -> ConfigOperator:
    """Single-site operator on the configuration basis.

    mat[u, v] is the on-site amplitude <u|O|v>; images whose total excitation
    exceeds ncut are projected out. Columns are restricted to the `sources`
    config indices when given; shape is (n_config, len(sources)).
    """
    src = np.arange(basis.n_config) if sources is None else np.asarray(sources)
    cur = basis.configs[src, site].astype(np.int64)
    headroom = basis.ncut - (basis.configs[src].sum(axis=1) - cur)
    key_src = basis.keys[src]
    w = basis.weights[site]
    rows, cols, vals = [], [], []
    dropped = 0
    for u in range(basis.ncut + 1):
        amp = mat[u, cur]
        allowed = headroom >= u
        nz = amp != 0.0
        dropped += int(np.count_nonzero(nz & ~allowed))
        keep = np.flatnonzero(nz & allowed)
        if keep.size == 0:
            continue
        new_key = key_src[keep] + (u - cur[keep]) * w
        pos = np.searchsorted(basis.keys, new_key)
        if np.any(pos >= basis.keys.size) or np.any(basis.keys[pos] != new_key):
            raise RuntimeError("internal consistency error: image configuration not found")
        rows.append(pos)
        cols.append(keep)
        vals.append(amp[keep])
    matrix = sparse.coo_matrix(
        (np.concatenate(vals) if vals else np.empty(0),
         (np.concatenate(rows) if rows else np.empty(0, dtype=np.int64),
          np.concatenate(cols) if cols else np.empty(0, dtype=np.int64))),
        shape=(basis.n_config, src.size)).tocsr()
    return ConfigOperator(matrix, dropped)


def bond_operator(basis: ExcitationBasis, site_a: int, site_b: int,
                  mat_a: np.ndarray, mat_b: np.ndarray,
                  sources: np.ndarray | None = None) -> ConfigOperator:
    """Simultaneous two-site operator O_a x O_b on the configuration basis.

    The transition amplitude is mat_a[u, alpha_a] * mat_b[v, alpha_b] for the
    image with sites (a, b) replaced by (u, v); only the final image is tested
    against the cutoff, so legal simultaneous transitions are kept even when
    an intermediate single-site step would overflow the budget.
    """
    if site_a == site_b:
        raise ValueError("bond sites must differ")
    src = np.arange(basis.n_config) if sources is None else np.asarray(sources)
    ca = basis.configs[src, site_a].astype(np.int64)
    cb = basis.configs[src, site_b].astype(np.int64)
    headroom = basis.ncut - (basis.configs[src].sum(axis=1) - ca - cb)
    key_src = basis.keys[src]
    wa = basis.weights[site_a]
    wb = basis.weights[site_b]
    rows, cols, vals = [], [], []
    dropped = 0
    for u in range(basis.ncut + 1):
        amp_a = mat_a[u, ca]
        for v in range(basis.ncut + 1 - u):
            amp = amp_a * mat_b[v, cb]
            allowed = headroom >= u + v
            nz = amp != 0.0
            dropped += int(np.count_nonzero(nz & ~allowed))
            keep = np.flatnonzero(nz & allowed)
            if keep.size == 0:
                continue
            new_key = key_src[keep] + (u - ca[keep]) * wa + (v - cb[keep]) * wb
            pos = np.searchsorted(basis.keys, new_key)
            if np.any(pos >= basis.keys.size) or np.any(basis.keys[pos] != new_key):
                raise RuntimeError("internal consistency error: image configuration not found")
            rows.append(pos)
            cols.append(keep)
            vals.append(amp[keep])
        # (u, v) pairs with u + v > ncut can never fit the budget
        for v in range(basis.ncut + 1 - u, basis.ncut + 1):
            dropped += int(np.count_nonzero((amp_a * mat_b[v, cb]) != 0.0))
    matrix = sparse.coo_matrix(
        (np.concatenate(vals) if vals else np.empty(0),
         (np.concatenate(rows) if rows else np.empty(0, dtype=np.int64),
          np.concatenate(cols) if cols else np.empty(0, dtype=np.int64))),
        shape=(basis.n_config, src.size)).tocsr()
    return ConfigOperator(matrix, dropped)
