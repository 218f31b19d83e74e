"""
Coboson-coboson scattering potentials.
"""

from .geometry import CONSTITUENTS, CobosonConfig, PairGeometry, unit_vector
from .potentials import (
    RAW_TO_PHYSICAL,
    UNIT_VECTOR_THRESHOLD,
    ScanRow,
    ScatteringComponents,
    check_multipole_validity,
    coulomb_sum,
    dd_angular,
    dipole_moment,
    magnetic_moment,
    multipole_from_configs,
    multipole_potential,
    multipole_terms,
    potential_components,
    quadrupole_tensor,
    scan_geometry,
    separation_vector,
)

__all__ = [
    "CONSTITUENTS",
    "CobosonConfig",
    "PairGeometry",
    "RAW_TO_PHYSICAL",
    "ScanRow",
    "ScatteringComponents",
    "UNIT_VECTOR_THRESHOLD",
    "check_multipole_validity",
    "coulomb_sum",
    "dd_angular",
    "dipole_moment",
    "magnetic_moment",
    "multipole_from_configs",
    "multipole_potential",
    "multipole_terms",
    "potential_components",
    "quadrupole_tensor",
    "scan_geometry",
    "separation_vector",
    "unit_vector",
]
