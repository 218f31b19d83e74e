"""
Explicit bound-state wavefunctions and the brute-force quadrature oracle.
"""

from .dipole import (
    C6_HYDROGEN_REFERENCE,
    c6_sum_over_states,
    dipole_prefactor,
    magnetic_moment_operator,
    overlap,
    radial_overlap,
    transition_dipole,
    zeeman_shift,
)
from .oracle import OracleReport, energy1_oracle, kappa, orbit_radial_integrals, p4_expectations
from .radial import (
    RadialFunction,
    hypervirial_residual,
    probability_density_at_origin,
    quad_dimensionless,
    radial_expectation,
    radial_quadrature,
)
from .spinor import BasisOperators, SpinorWavefunction, basis_operators, tensor_operator

__all__ = [
    "BasisOperators",
    "C6_HYDROGEN_REFERENCE",
    "OracleReport",
    "RadialFunction",
    "SpinorWavefunction",
    "basis_operators",
    "c6_sum_over_states",
    "dipole_prefactor",
    "energy1_oracle",
    "hypervirial_residual",
    "kappa",
    "magnetic_moment_operator",
    "orbit_radial_integrals",
    "overlap",
    "p4_expectations",
    "probability_density_at_origin",
    "quad_dimensionless",
    "radial_expectation",
    "radial_overlap",
    "radial_quadrature",
    "tensor_operator",
    "transition_dipole",
    "zeeman_shift",
]
