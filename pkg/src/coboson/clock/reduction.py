"""
Reduction of two internal levels to a clock: mean mass, transition frequency and the
equivalence between the (M, h_rel) and (M_bar, h_cl) forms of the c.m. Hamiltonian.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple

from ..constants import ATOMIC, PhysicalConstants, SpeciesParams, clock_preset_data
from ..errors import DomainError
from ..spectrum import QuantumNumbers, energy0, mean_mass, validate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClockParams:
    """
    Two-level clock in atomic units (hbar = 1, so hbar Omega = Omega).

    Attributes:
        M: Bare total mass.
        M_bar: Mean mass M + (E_e0 + E_g0)/(2 c^2).
        Omega: Transition frequency E_e0 - E_g0.
        M_g: Ground-state mass M + E_g0/c^2.
        M_e: Excited-state mass M + E_e0/c^2.
        E_g0: Unperturbed ground energy.
        E_e0: Unperturbed excited energy.
        c: Speed of light used for the masses.
        name: Label for tables and manifests.
    """
    M: float
    M_bar: float
    Omega: float
    M_g: float
    M_e: float
    E_g0: float
    E_e0: float
    c: float
    name: str = "custom"

    @property
    def clock_energies(self) -> Tuple[float, float]:
        """Eigenvalues (ground, excited) of the clock Hamiltonian."""
        return (-0.5 * self.Omega, 0.5 * self.Omega)

    @property
    def relative_frequency(self) -> float:
        """hbar Omega / (M_bar c^2)."""
        return self.Omega / (self.M_bar * self.c**2)

    def reexpansion_residual(self) -> float:
        """max_j |M (1 + E_j/(M c^2)) - (M_bar +- Omega/(2 c^2))| / M."""
        c2 = self.c**2
        h_g, h_e = self.clock_energies
        ground = abs(self.M * (1.0 + self.E_g0 / (self.M * c2)) - (self.M_bar + h_g / c2))
        excited = abs(self.M * (1.0 + self.E_e0 / (self.M * c2)) - (self.M_bar + h_e / c2))
        return max(ground, excited) / self.M


def clock_from_energies(
    M: float,
    E_g: float,
    E_e: float,
    constants: PhysicalConstants = ATOMIC,
    *,
    name: str = "custom",
) -> ClockParams:
    """
    Build a clock from two internal energies.

    Raises:
        DomainError: If M is not positive or E_g >= E_e.
    """
    if not M > 0:
        raise DomainError(f"Total mass must be positive, got {M}")
    if not E_g < E_e:
        raise DomainError(f"Clock needs E_g < E_e, got E_g={E_g!r}, E_e={E_e!r}")
    c2 = constants.c**2
    return ClockParams(
        M=M,
        M_bar=mean_mass(E_g, E_e, M, constants),
        Omega=E_e - E_g,
        M_g=M + E_g / c2,
        M_e=M + E_e / c2,
        E_g0=E_g,
        E_e0=E_e,
        c=constants.c,
        name=name,
    )


def reduce_to_clock(
    species: SpeciesParams,
    beta_g: QuantumNumbers,
    beta_e: QuantumNumbers,
    constants: PhysicalConstants = ATOMIC,
) -> ClockParams:
    """
    Clock made of two hydrogenlike levels, using their unperturbed energies.

    Raises:
        DomainError: If the states are identical or E_g >= E_e (same n included).
    """
    validate(beta_g)
    validate(beta_e)
    if beta_g == beta_e:
        raise DomainError(f"Clock states must differ, got {beta_g.label} twice")
    E_g = energy0(species, beta_g.n, constants)
    E_e = energy0(species, beta_e.n, constants)
    clock = clock_from_energies(
        species.M, E_g, E_e, constants, name=f"{species.name}:{beta_g.label}->{beta_e.label}"
    )
    logger.debug("Clock %s: Omega=%.12e, M_bar=%.12e", clock.name, clock.Omega, clock.M_bar)
    return clock


def clock_preset(name: str, constants: PhysicalConstants = ATOMIC) -> ClockParams:
    """Clock from a measured transition; the ground state is taken as the zero of energy."""
    preset = clock_preset_data(name)
    return clock_from_energies(preset.mass, 0.0, preset.transition_energy, constants, name=preset.name)


def kinetic_forms(clock: ClockParams, P: float) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """
    Kinetic parts of both Hamiltonian forms, per state (ground, excited).

    Returns:
        ((K1_g, K2_g), (K1_e, K2_e)) with K1 = P^2/(2M)(1 - E_j/(M c^2)) and
        K2 = P^2/(2 M_bar)(1 - h_j/(M_bar c^2)).
    """
    c2 = clock.c**2
    kinetic_bare = P * P / (2.0 * clock.M)
    kinetic_mean = P * P / (2.0 * clock.M_bar)
    forms = []
    for E_j, h_j in zip((clock.E_g0, clock.E_e0), clock.clock_energies):
        forms.append(
            (kinetic_bare * (1.0 - E_j / (clock.M * c2)), kinetic_mean * (1.0 - h_j / (clock.M_bar * c2)))
        )
    return forms[0], forms[1]


def _state_residual(clock: ClockParams, P: float, h_j: float) -> float:
    # K1 - K2 = -(P^2/2M) [a^2/(1+a) + b a (2+a)/(1+a)^2] with a = E_bar/(M c^2), b = h_j/(M c^2)
    Mc2 = clock.M * clock.c**2
    a = 0.5 * (clock.E_g0 + clock.E_e0) / Mc2
    b = h_j / Mc2
    bracket = a * a / (1.0 + a) + b * a * (2.0 + a) / (1.0 + a) ** 2
    return abs(P * P / (2.0 * clock.M) * bracket)


def equivalence_residual(
    species: SpeciesParams,
    beta_g: QuantumNumbers,
    beta_e: QuantumNumbers,
    P: float,
    c_scale: float = 1.0,
    constants: PhysicalConstants = ATOMIC,
) -> float:
    """
    max_j |E_form1 - E_form2| between the (M, E_j) and (M_bar, h_j) Hamiltonians.

    The rest energies M c^2 + E_j and M_bar c^2 + h_j agree identically, so only the
    kinetic parts differ; their difference is evaluated without cancellation. P is held
    fixed in atomic units while c is scaled, giving a c^-4 residual.
    """
    scaled = constants.with_c_scale(c_scale)
    clock = reduce_to_clock(species, beta_g, beta_e, scaled)
    return max(_state_residual(clock, P, h_j) for h_j in clock.clock_energies)


def p4_mass_residual(
    species: SpeciesParams,
    beta_g: QuantumNumbers,
    beta_e: QuantumNumbers,
    P: float,
    c_scale: float = 1.0,
    constants: PhysicalConstants = ATOMIC,
) -> float:
    """
    |P^4/(8 M^3 c^2) - P^4/(8 M_bar^3 c^2)|, the cost of writing the quartic term with M_bar.
    """
    scaled = constants.with_c_scale(c_scale)
    clock = reduce_to_clock(species, beta_g, beta_e, scaled)
    a = 0.5 * (clock.E_g0 + clock.E_e0) / (clock.M * clock.c**2)
    # 1 - 1/(1+a)^3 = a (3 + 3a + a^2)/(1+a)^3
    ratio = a * (3.0 + 3.0 * a + a * a) / (1.0 + a) ** 3
    return abs(P**4 / (8.0 * clock.c**2 * clock.M**3) * ratio)
