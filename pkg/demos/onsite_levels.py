"""Story: how good is Bohr-Sommerfeld quantization for the anharmonic well?

Diagonalizes h = P^2/2 + X^2/2 + A4 X^4 in a truncated harmonic basis and
solves the action-integral condition I(E) = n + 1/2 for the same well, then
prints both ladders side by side.  The relative error shrinks with n — the
semiclassical picture improves as the well fills up — and at A4 = 0 the two
ladders coincide to the bisection tolerance.
"""

import numpy as np

from kglattice import ModelParams, semiclassical_levels, solve_onsite

N_LEVELS = 9

for a4 in (0.2, 0.4):
    params = ModelParams(a4=a4, c=0.0, n=2, ncut=N_LEVELS)
    quantum = solve_onsite(params).gamma[:N_LEVELS]
    semi = semiclassical_levels(0.0, a4, N_LEVELS - 1)
    print(f"\nA4 = {a4}  (energies in units of hbar*Omega)")
    print(f"{'n':>2} {'quantum':>12} {'semiclassical':>14} {'rel. error':>11}")
    for n in range(N_LEVELS):
        rel = abs(semi[n] - quantum[n]) / quantum[n]
        print(f"{n:>2} {quantum[n]:>12.6f} {semi[n]:>14.6f} {rel:>11.2e}")

harmonic = solve_onsite(ModelParams(a4=0.0, c=0.0, n=2, ncut=N_LEVELS)).gamma
exact = semiclassical_levels(0.0, 0.0, N_LEVELS - 1)
print(f"\nA4 = 0 sanity: max |semiclassical - quantum| = "
      f"{np.max(np.abs(exact - harmonic[:N_LEVELS])):.2e}")
