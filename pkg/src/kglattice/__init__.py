"""Quantum eigenspectrum, phonon bound-state bands and breather dynamics of a
1D nonlinear Klein-Gordon lattice."""

__version__ = "0.1.0"

from .bands import (BAND_GAUGE_TAG, BoundBand, LatticeSpectrum,
                    band_statistics, dispersion_compare, identify_band,
                    lowest_excitation_dispersion, solve_bands)
from .breather import (BreatherRun, contrast, geometric_grid,
                       kinetic_cross_elements, lifetime, linear_grid,
                       recurrence_events, run_breather)
from .onsite import (ModelParams, OnSiteSolution, PhysicalParams,
                     action_integral, reduce_physical, semiclassical_levels,
                     solve_onsite, well_potential)
from .oracle import (DenseProblem, dense_hamiltonian, direct_evolution,
                     sparse_hamiltonian)
from .qham import GAUGE_TAG, assemble_qblock, build_image_table, \
    diagonalize_qblock
from .symbasis import (ExcitationBasis, MomentumSector, build_basis,
                       build_sector, sector_census)

__all__ = [
    "__version__",
    "PhysicalParams", "ModelParams", "OnSiteSolution", "reduce_physical",
    "solve_onsite", "semiclassical_levels", "action_integral",
    "well_potential",
    "ExcitationBasis", "MomentumSector", "build_basis", "build_sector",
    "sector_census",
    "GAUGE_TAG", "assemble_qblock", "build_image_table", "diagonalize_qblock",
    "BAND_GAUGE_TAG", "BoundBand", "LatticeSpectrum", "solve_bands",
    "identify_band", "band_statistics", "dispersion_compare",
    "lowest_excitation_dispersion",
    "BreatherRun", "run_breather", "kinetic_cross_elements", "contrast",
    "lifetime", "recurrence_events", "linear_grid", "geometric_grid",
    "DenseProblem", "dense_hamiltonian", "direct_evolution",
    "sparse_hamiltonian",
]
