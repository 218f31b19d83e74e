"""
Multi-mode modified Gross-Pitaevskii solver on a periodic 1D grid.
"""

from .observables import (
    EnergyTerms,
    GpeObservables,
    energy_terms,
    local_hamiltonian,
    observables,
    thomas_fermi_density,
)
from .problem import (
    Grid1D,
    GpeMode,
    GpeProblem,
    GpeState,
    constant_coupling,
    density_contact,
    dipole_coupling,
    gaussian_field,
    initial_state,
    mode_from_state,
    plane_wave_field,
)
from .solver import GroundStateResult, cfl_limit, check_cfl, evolve, ground_state, step

__all__ = [
    "EnergyTerms",
    "GpeMode",
    "GpeObservables",
    "GpeProblem",
    "GpeState",
    "Grid1D",
    "GroundStateResult",
    "cfl_limit",
    "check_cfl",
    "constant_coupling",
    "density_contact",
    "dipole_coupling",
    "energy_terms",
    "evolve",
    "gaussian_field",
    "ground_state",
    "initial_state",
    "local_hamiltonian",
    "mode_from_state",
    "observables",
    "plane_wave_field",
    "step",
    "thomas_fermi_density",
]
