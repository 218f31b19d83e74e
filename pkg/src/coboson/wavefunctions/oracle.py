"""
Brute-force evaluation of the first-order shift, term by term, from explicit wavefunctions.

This path shares no closed-form algebra with `coboson.spectrum.levels`: radial
integrals come from adaptive quadrature, angular and spin factors from exact
matrices, and the contact terms from the radial function at the origin.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Dict

from ..constants import ATOMIC, PhysicalConstants, SpeciesParams
from ..errors import QuadratureError
from ..spectrum import QuantumNumbers, WilsonCoefficients, alpha_coefficients
from .radial import RadialFunction
from .spinor import SpinorWavefunction, tensor_operator

logger = logging.getLogger(__name__)

P4_AGREEMENT = 1e-6
ANGULAR_ZERO = 1e-13


@dataclass(frozen=True)
class OracleReport:
    """
    Per-term first-order energies (Hartree) and diagnostics.

    Attributes:
        kinetic: -<p^4>(m_e^3 + m_n^3)/(8 m_r^3 c^2 M^3).
        orbit: -kappa <(ell^2/2 + (r.p)^2)/r^3> with (r.p)^2 applied as written.
        darwin: kappa pi alpha_D |psi(0)|^2.
        contact: kappa pi alpha_ss |psi(0)|^2 <s_n.s_e>.
        spin_orbit: Total-spin plus relative-spin orbit couplings.
        dipole_dipole: kappa cF_n cF_e <S_ne / r^3>.
        total: Sum of the six terms.
        p4_direct: <p^4> from |nabla^2 psi|^2.
        p4_schrodinger: <p^4> from 4 m_r^2 <(E - V)^2>.
        orbit_hermiticity_residual: As-written minus symmetric (int r R'^2 dr) radial orbit integral.
    """
    kinetic: float
    orbit: float
    darwin: float
    contact: float
    spin_orbit: float
    dipole_dipole: float
    total: float
    p4_direct: float
    p4_schrodinger: float
    orbit_hermiticity_residual: float
    ell_dot_S: float
    ell_dot_s: float
    s_n_dot_s_e: float
    tensor: float

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)

    def terms(self) -> Dict[str, float]:
        return {
            "kinetic": self.kinetic,
            "orbit": self.orbit,
            "darwin": self.darwin,
            "contact": self.contact,
            "spin_orbit": self.spin_orbit,
            "dipole_dipole": self.dipole_dipole,
            "total": self.total,
        }


def kappa(species: SpeciesParams, constants: PhysicalConstants = ATOMIC) -> float:
    """-q_e q_n/(4 pi eps0 m_r M c^2)."""
    coulomb = -species.q_e * species.q_n / (4.0 * math.pi * constants.eps0)
    return coulomb / (species.m_r * species.M * constants.c**2)


def p4_expectations(radial: RadialFunction, species: SpeciesParams) -> tuple[float, float]:
    """(<p^4> direct, <p^4> via the Schrodinger equation), both by quadrature."""
    n, L, k = radial.n, radial.ell * (radial.ell + 1), radial.k

    def laplacian_sq(x: float) -> float:
        value = x * radial.d2u(x) + 2.0 * radial.du(x)
        if L:
            value -= L * radial.u(x) / x
        return value * value

    direct = k**4 * radial.integrate(laplacian_sq, "|nabla^2 psi|^2")
    schrodinger = 4.0 * k**4 * radial.integrate(
        lambda x: (1.0 - x / (2.0 * n**2)) ** 2 * radial.u(x) ** 2, "<(E - V)^2>"
    )
    return direct, schrodinger


def orbit_radial_integrals(radial: RadialFunction) -> tuple[float, float]:
    """
    (-int R (r R'' + R') dr, int r R'^2 dr).

    The first is <psi| r^-3 (r.p)^2 |psi> with r.p = -i r d/dr applied twice;
    the second is its symmetric counterpart.
    """
    k3 = radial.k**3
    as_written = -k3 * radial.integrate(lambda x: radial.u(x) * (x * radial.d2u(x) + radial.du(x)), "orbit (as written)")
    symmetric = k3 * radial.integrate(lambda x: x * radial.du(x) ** 2, "orbit (symmetric)")
    return as_written, symmetric


def inverse_cube(radial: RadialFunction) -> float:
    """<1/r^3> by quadrature (ell >= 1)."""
    return radial.k**3 * radial.integrate(lambda x: radial.u(x) ** 2 / x, "<r^-3>")


def energy1_oracle(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    beta: QuantumNumbers,
    constants: PhysicalConstants = ATOMIC,
) -> OracleReport:
    """
    Evaluate <beta| h_rel^(1) |beta> by quadrature and exact spin algebra.

    Raises:
        QuantumNumberError: If beta is not a valid label.
        QuadratureError: If an integral misses tolerance or the two <p^4> paths disagree.
    """
    state = SpinorWavefunction(beta, species)
    radial = state.radial
    ops = state.operators
    alphas = alpha_coefficients(wilson, species, constants)
    kap = kappa(species, constants)
    c2 = constants.c**2
    m_e, m_n, M, m_r = species.m_e, species.m_n, species.M, species.m_r

    p4_direct, p4_schrodinger = p4_expectations(radial, species)
    if abs(p4_direct - p4_schrodinger) > P4_AGREEMENT * abs(p4_schrodinger):
        raise QuadratureError(
            f"<p^4> for {beta.label}",
            p4_direct,
            abs(p4_direct - p4_schrodinger),
            f"direct and Schrodinger paths disagree ({p4_direct:.12e} vs {p4_schrodinger:.12e})",
        )
    kinetic = -p4_schrodinger * (m_e**3 + m_n**3) / (8.0 * m_r**3 * c2 * M**3)

    as_written, symmetric = orbit_radial_integrals(radial)
    L = beta.ell * (beta.ell + 1)
    r_inv3 = inverse_cube(radial) if beta.ell > 0 else 0.0
    orbit = -kap * (0.5 * L * r_inv3 + as_written)
    residual = as_written - symmetric
    logger.debug("Orbit Hermiticity residual for %s: %.3e", beta.label, residual)

    density0 = radial.value_at_origin() ** 2 / (4.0 * math.pi) if beta.ell == 0 else 0.0
    s_n_dot_s_e = state.expectation(ops.dot(ops.s_n, ops.s_e))
    darwin = kap * math.pi * alphas.alpha_D * density0
    contact = kap * math.pi * alphas.alpha_ss * density0 * s_n_dot_s_e

    ell_dot_S = state.expectation(ops.dot(ops.L, ops.S))
    ell_dot_s = state.expectation(ops.dot(ops.L, ops.relative_spin(species)))
    tensor = state.expectation(tensor_operator(beta.ell))
    spin_orbit = 0.0
    dipole_dipole = 0.0
    if beta.ell > 0:
        if abs(ell_dot_S) > ANGULAR_ZERO or abs(ell_dot_s) > ANGULAR_ZERO:
            spin_orbit = kap * r_inv3 * (alphas.alpha_lS * ell_dot_S + alphas.alpha_ls * ell_dot_s)
        if abs(tensor) > ANGULAR_ZERO:
            dipole_dipole = kap * wilson.cF_n * wilson.cF_e * r_inv3 * tensor

    total = kinetic + orbit + darwin + contact + spin_orbit + dipole_dipole
    return OracleReport(
        kinetic=kinetic,
        orbit=orbit,
        darwin=darwin,
        contact=contact,
        spin_orbit=spin_orbit,
        dipole_dipole=dipole_dipole,
        total=total,
        p4_direct=p4_direct,
        p4_schrodinger=p4_schrodinger,
        orbit_hermiticity_residual=residual,
        ell_dot_S=ell_dot_S,
        ell_dot_s=ell_dot_s,
        s_n_dot_s_e=s_n_dot_s_e,
        tensor=tensor,
    )
