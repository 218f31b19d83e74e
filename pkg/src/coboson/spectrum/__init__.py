"""
Internal-state energetics: labels, coupling table, Wilson coefficients and level tables.
"""

from .clebsch import ROWS, SPIN_PROJECTIONS, clebsch_gordan, coefficient_vector
from .levels import (
    DispersionSample,
    EnergyLevel,
    FirstOrderTerms,
    dispersion_table,
    energy0,
    energy1,
    first_order_prefactor,
    first_order_terms,
    hyperfine_splitting,
    level_table,
    mean_mass,
    state_mass,
)
from .quantum import QuantumNumbers, allowed_j, enumerate_states, validate
from .wilson import (
    WILSON_PRESETS,
    AlphaCoefficients,
    WilsonCoefficients,
    alpha_coefficients,
    bare,
    c_jl,
    tree_level,
    wilson_preset,
)

__all__ = [
    "AlphaCoefficients",
    "DispersionSample",
    "EnergyLevel",
    "FirstOrderTerms",
    "QuantumNumbers",
    "ROWS",
    "SPIN_PROJECTIONS",
    "WILSON_PRESETS",
    "WilsonCoefficients",
    "allowed_j",
    "alpha_coefficients",
    "bare",
    "c_jl",
    "clebsch_gordan",
    "coefficient_vector",
    "dispersion_table",
    "energy0",
    "energy1",
    "enumerate_states",
    "first_order_prefactor",
    "first_order_terms",
    "hyperfine_splitting",
    "level_table",
    "mean_mass",
    "state_mass",
    "tree_level",
    "validate",
    "wilson_preset",
]
