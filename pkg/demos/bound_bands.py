"""Story: multi-phonon bound states form flat bands that sharpen with order.

Solves a 9-site quartic lattice sector by sector, identifies the alpha-phonon
bound band in each momentum sector by its overlap with the single-site
excitation, and prints the band centers and widths.  At weak coupling the
width collapses by roughly an order of magnitude per extra phonon — the
heavier the bound composite, the harder it tunnels.
"""

import numpy as np

from kglattice import ModelParams, band_statistics, solve_bands

for coupling in (0.05, 0.2):
    params = ModelParams(a4=0.2, c=coupling, n=9, ncut=4)
    spectrum = solve_bands(params, alphas=[1, 2, 3, 4])
    print(f"\nN = {params.n}, Ncut = {params.ncut}, A4 = {params.a4}, "
          f"C = {coupling}")
    print(f"{'alpha':>5} {'mean':>10} {'width':>12} {'min overlap':>12} "
          f"{'complete':>9}")
    for alpha in (1, 2, 3, 4):
        band = spectrum.bands[alpha]
        if band.complete:
            width, mean = band_statistics(band)
            print(f"{alpha:>5} {mean:>10.5f} {width:>12.3e} "
                  f"{band.overlaps.min():>12.4f} {'yes':>9}")
        else:
            missing = int(np.sum(band.lams < 0))
            print(f"{alpha:>5} {'-':>10} {'-':>12} {'-':>12} "
                  f"{f'no ({missing} k missing)':>9}")

print("\nBand energies E_alpha(q) are plot-ready via "
      "spectrum.bands[alpha].qs / .energies;")
print("the `kglattice band` command emits the same table as CSV.")
