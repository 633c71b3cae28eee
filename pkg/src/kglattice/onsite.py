"""Single anharmonic oscillator: truncated-basis diagonalization and
semiclassical action quantization."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.optimize import brentq


@dataclass(frozen=True)
class PhysicalParams:
    """Lattice constants in physical units (on-site quartic well, quadratic
    nearest-neighbour coupling of strength c)."""

    mass: float
    a2: float
    a3: float = 0.0
    a4: float = 0.0
    c: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.mass <= 0.0:
            raise ValueError("mass must be positive")
        if self.hbar <= 0.0:
            raise ValueError("hbar must be positive")
        if self.a2 - 2.0 * self.c <= 0.0:
            raise ValueError("invalid stiffness: a2 - 2c must be positive")


def reduce_physical(phys: PhysicalParams) -> tuple[float, float, float]:
    """Reduce physical constants to (Omega, A4, C).

    Omega = sqrt(2(a2 - 2c)/m) is the bare oscillator frequency; A4 and C are
    the dimensionless quartic and intersite couplings of the model measured in
    units of hbar*Omega.
    """
    omega_sq = 2.0 * (phys.a2 - 2.0 * phys.c) / phys.mass
    if omega_sq <= 0.0:
        raise ValueError("invalid stiffness: non-positive Omega^2")
    omega = math.sqrt(omega_sq)
    a4 = phys.a4 * phys.hbar / (phys.mass**2 * omega**3)
    c = 4.0 * phys.c / (phys.mass * omega_sq)
    return omega, a4, c


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless lattice model: n sites, quartic a4 (cubic a3), coupling c,
    total excitation cutoff ncut, oscillator truncation dim."""

    a4: float
    c: float
    n: int
    ncut: int
    a3: float = 0.0
    dim: int | None = None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.ncut < 1:
            raise ValueError("ncut must be at least 1")
        if self.a3 == 0.0:
            if self.a4 < 0.0:
                raise ValueError("a4 must be nonnegative when a3 = 0")
        elif self.a4 <= 0.0:
            raise ValueError("a4 must be positive when a3 != 0")
        if self.dim is None:
            object.__setattr__(self, "dim", max(40, 4 * self.ncut))
        if self.dim <= self.ncut + 2:
            raise ValueError("oscillator truncation dim must exceed ncut + 2")


class OscillatorOperators(NamedTuple):
    x: np.ndarray
    p2: np.ndarray
    x2: np.ndarray
    x3: np.ndarray
    x4: np.ndarray


def build_oscillator_operators(dim: int) -> OscillatorOperators:
    """Matrices of X, P^2 and the powers X^2..X^4 in the harmonic basis.

    Powers are formed in an enlarged basis of dimension dim+4 and truncated
    afterwards, so the returned blocks are the exact matrix elements between
    the first dim harmonic states (no truncation bias from operator algebra).
    """
    if dim < 2:
        raise ValueError("dim must be at least 2")
    big = dim + 4
    off = np.sqrt(0.5 * np.arange(1, big))
    x_big = np.diag(off, 1) + np.diag(off, -1)
    x2_big = x_big @ x_big
    x3_big = x2_big @ x_big
    x4_big = x3_big @ x_big

    n = np.arange(dim, dtype=float)
    pair = np.sqrt((n[: dim - 2] + 1.0) * (n[: dim - 2] + 2.0)) / 2.0
    p2 = np.diag(n + 0.5) - np.diag(pair, 2) - np.diag(pair, -2)

    cut = np.s_[:dim, :dim]
    return OscillatorOperators(x_big[cut], p2, x2_big[cut], x3_big[cut], x4_big[cut])


@dataclass(frozen=True)
class OnSiteSolution:
    """Eigenbasis of the on-site well: levels gamma (units hbar*Omega),
    orthogonal transform u from the harmonic basis, and the operators
    X and P^2/2 rotated into the eigenbasis."""

    gamma: np.ndarray
    u: np.ndarray
    xtilde: np.ndarray
    khalf: np.ndarray
    dim: int


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    # reproducible eigenvector signs: largest-magnitude component positive
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0.0] = 1.0
    return vectors * signs


def _diagonalize_well(a3: float, a4: float, dim: int):
    ops = build_oscillator_operators(dim)
    h = 0.5 * ops.p2 + 0.5 * ops.x2 + a3 * ops.x3 + a4 * ops.x4
    try:
        gamma, u = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigensolver error for on-site well (dim={dim})") from exc
    if np.any(np.diff(gamma) < -1e-12):
        raise RuntimeError("eigensolver error: eigenvalues not ascending")
    return gamma, _fix_signs(u), ops


def solve_onsite(params: ModelParams, check_convergence: bool = True) -> OnSiteSolution:
    """Diagonalize h = P^2/2 + X^2/2 + a3 X^3 + a4 X^4 in the truncated
    harmonic basis.

    With check_convergence the truncation is doubled once and a warning is
    emitted if any level up to ncut+2 moves by more than 1e-10.
    """
    gamma, u, ops = _diagonalize_well(params.a3, params.a4, params.dim)
    if check_convergence:
        gamma_big, _, _ = _diagonalize_well(params.a3, params.a4, 2 * params.dim)
        top = params.ncut + 3
        drift = np.max(np.abs(gamma[:top] - gamma_big[:top]))
        if drift > 1e-10:
            warnings.warn(
                f"on-site levels not converged at dim={params.dim}: "
                f"max drift {drift:.3e} for the first {top} levels",
                stacklevel=2,
            )
    xtilde = u.T @ ops.x @ u
    khalf = u.T @ (0.5 * ops.p2) @ u
    return OnSiteSolution(gamma=gamma, u=u, xtilde=xtilde, khalf=khalf, dim=params.dim)


# ---------------------------------------------------------------------------
# semiclassical quantization of the same well


def well_potential(x, a3: float, a4: float):
    return 0.5 * x * x + a3 * x**3 + a4 * x**4


_GL_NODES, _GL_WEIGHTS = leggauss(64)


def _turning_points(energy: float, a3: float, a4: float) -> tuple[float, float]:
    if energy <= 0.0:
        raise ValueError("energy must be positive")

    def residual(x):
        return well_potential(x, a3, a4) - energy

    points = []
    for side in (1.0, -1.0):
        b = side * max(1.0, math.sqrt(2.0 * energy))
        for _ in range(200):
            if residual(b) > 0.0:
                break
            b *= 2.0
        else:
            raise ValueError("unsupported potential shape: no turning point found")
        points.append(brentq(residual, min(0.0, b), max(0.0, b), xtol=1e-14, rtol=1e-15))
    xr, xl = points

    # reject wells that fragment the allowed interval (double wells etc.)
    interior = np.linspace(xl, xr, 801)[1:-1]
    if np.any(well_potential(interior, a3, a4) > energy + 1e-12 * max(1.0, energy)):
        raise ValueError("unsupported potential shape: multiple turning-point pairs")
    return xl, xr


def action_integral(energy: float, a3: float = 0.0, a4: float = 0.0) -> float:
    """Classical action I(E) = (1/pi) * integral of sqrt(2(E - V)) over the
    allowed interval; the endpoint square-root singularity is removed by the
    substitution x = x_t sin(theta) on each side of the minimum."""
    xl, xr = _turning_points(energy, a3, a4)
    theta = 0.25 * math.pi * (_GL_NODES + 1.0)
    weights = 0.25 * math.pi * _GL_WEIGHTS
    total = 0.0
    for xt in (xr, xl):
        x = xt * np.sin(theta)
        radicand = np.maximum(2.0 * (energy - well_potential(x, a3, a4)), 0.0)
        total += abs(xt) * np.sum(weights * np.sqrt(radicand) * np.cos(theta))
    return total / math.pi


def semiclassical_levels(a3: float, a4: float, n_max: int) -> np.ndarray:
    """Energies E_n solving I(E_n) = n + 1/2 for n = 0..n_max, by bisection on
    the monotone action integral."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    levels = np.empty(n_max + 1)
    for n in range(n_max + 1):
        target = n + 0.5
        lo = 1e-12
        hi = target
        for _ in range(200):
            if action_integral(hi, a3, a4) >= target:
                break
            hi *= 2.0
        else:
            raise RuntimeError("action quantization failed to bracket the level")
        while hi - lo > 1e-10:
            mid = 0.5 * (lo + hi)
            if action_integral(mid, a3, a4) < target:
                lo = mid
            else:
                hi = mid
        levels[n] = 0.5 * (lo + hi)
    return levels
