"""
Closed-form bound-state energies, state-dependent masses and level tables.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

from ..constants import ATOMIC, PhysicalConstants, SpeciesParams
from ..errors import DomainError
from .quantum import QuantumNumbers, enumerate_states, validate
from .wilson import AlphaCoefficients, WilsonCoefficients, alpha_coefficients, c_jl

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FirstOrderTerms:
    """
    Breakdown of the first-order shift.

    The four brace terms are dimensionless; `prefactor` is
    m_r^2 c^2 (Z alpha)^4 / M and `total` = prefactor * (sum of the brace terms).
    """
    prefactor: float
    kinetic: float
    orbit: float
    darwin_contact: float
    spin_structure: float

    @property
    def brace(self) -> float:
        return self.kinetic + self.orbit + self.darwin_contact + self.spin_structure

    @property
    def total(self) -> float:
        return self.prefactor * self.brace

    def energies(self) -> dict[str, float]:
        """Each term multiplied by the prefactor (Hartree)."""
        return {
            "kinetic": self.prefactor * self.kinetic,
            "orbit": self.prefactor * self.orbit,
            "darwin_contact": self.prefactor * self.darwin_contact,
            "spin_structure": self.prefactor * self.spin_structure,
            "total": self.total,
        }


@dataclass(frozen=True)
class EnergyLevel:
    """
    One row of a level table.

    Attributes:
        beta: State label.
        E0: Unperturbed energy (Hartree).
        E1: First-order shift (Hartree).
        M_alpha: State-dependent rest mass.
        degeneracy: Number of m_j states sharing (n, ell, S, j).
        M: Bare total mass of the species.
        c: Speed of light used for the mass defect.
    """
    beta: QuantumNumbers
    E0: float
    E1: float
    M_alpha: float
    degeneracy: int
    M: float
    c: float

    @property
    def rel_mass_shift(self) -> float:
        """(M_alpha - M)/M, evaluated as E0/(M c^2) to avoid cancellation."""
        return self.E0 / (self.M * self.c**2)

    @property
    def sort_key(self) -> tuple:
        b = self.beta
        return (b.n, self.E1, b.ell, b.S, b.j, b.m_j)


def energy0(species: SpeciesParams, n: int, constants: PhysicalConstants = ATOMIC) -> float:
    """
    Unperturbed energy -m_r (Z alpha c)^2/(2 n^2).

    Raises:
        DomainError: If n < 1.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be an integer >= 1, got {n!r}")
    z_alpha_c = species.Z * constants.alpha * constants.c
    return -species.m_r * z_alpha_c**2 / (2.0 * n**2)


def first_order_prefactor(species: SpeciesParams, constants: PhysicalConstants = ATOMIC) -> float:
    """m_r^2 c^2 (Z alpha)^4 / M."""
    z_alpha = species.Z * constants.alpha
    return species.m_r**2 * constants.c**2 * z_alpha**4 / species.M


def first_order_terms(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    beta: QuantumNumbers,
    constants: PhysicalConstants = ATOMIC,
    *,
    as_printed: bool = False,
    alphas: Optional[AlphaCoefficients] = None,
) -> FirstOrderTerms:
    """
    Evaluate the four terms of the first-order shift for one state.

    The orbit term carries an extra n delta_{ell,0}/n^4 and the spin-structure term
    reads +delta_{S,1} C_{j,ell}/(n^3 ell(ell+1)(2ell+1)) for ell >= 1. Both forms
    agree with the quadrature oracle in `coboson.wavefunctions`. `as_printed=True`
    evaluates the widely quoted variant without the 1/n^3, with the opposite sign
    of the spin-structure term and without the ell = 0 orbit piece, for comparison.

    Raises:
        QuantumNumberError: If beta violates a coupling rule.
    """
    validate(beta)
    n, ell, S = beta.n, beta.ell, beta.S
    if alphas is None:
        alphas = alpha_coefficients(wilson, species, constants)
    m_e, m_n, M, m_r = species.m_e, species.m_n, species.M, species.m_r
    s_wave = ell == 0
    triplet = S == 1

    kinetic = (m_e**3 + m_n**3) / (8.0 * m_r * M**2) * (3.0 - 8.0 * n / (2 * ell + 1)) / n**4
    orbit = (1.0 - 3.0 * n / (2 * ell + 1)) / n**4
    if s_wave and not as_printed:
        orbit += n / n**4
    darwin_contact = 0.0
    if s_wave:
        darwin_contact = (alphas.alpha_D - 0.75 * alphas.alpha_ss + alphas.alpha_ss * triplet) / n**3
    spin_structure = 0.0
    if triplet and not s_wave:
        cjl = c_jl(wilson, species, beta.j, ell, constants, alphas=alphas)
        angular = ell * (ell + 1) * (2 * ell + 1)
        spin_structure = -cjl / angular if as_printed else cjl / (n**3 * angular)
    return FirstOrderTerms(
        prefactor=first_order_prefactor(species, constants),
        kinetic=kinetic,
        orbit=orbit,
        darwin_contact=darwin_contact,
        spin_structure=spin_structure,
    )


def energy1(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    beta: QuantumNumbers,
    constants: PhysicalConstants = ATOMIC,
) -> float:
    """First-order relativistic and QED shift of state `beta` (Hartree)."""
    return first_order_terms(species, wilson, beta, constants).total


def hyperfine_splitting(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    n: int = 1,
    constants: PhysicalConstants = ATOMIC,
) -> float:
    """Triplet-minus-singlet splitting of the nS manifold (Hartree)."""
    triplet = energy1(species, wilson, QuantumNumbers(n, 0, 1, 1, 0), constants)
    singlet = energy1(species, wilson, QuantumNumbers(n, 0, 0, 0, 0), constants)
    return triplet - singlet


def state_mass(species: SpeciesParams, beta: QuantumNumbers, constants: PhysicalConstants = ATOMIC) -> float:
    """State-dependent rest mass M (1 + E0/(M c^2))."""
    validate(beta)
    return species.M + energy0(species, beta.n, constants) / constants.c**2


def mean_mass(E_g: float, E_e: float, M: float, constants: PhysicalConstants = ATOMIC) -> float:
    """Mean mass M + (E_e + E_g)/(2 c^2) of a two-level clock."""
    return M + (E_e + E_g) / (2.0 * constants.c**2)


def _level(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    beta: QuantumNumbers,
    constants: PhysicalConstants,
    alphas: AlphaCoefficients,
) -> EnergyLevel:
    E0 = energy0(species, beta.n, constants)
    E1 = first_order_terms(species, wilson, beta, constants, alphas=alphas).total
    return EnergyLevel(
        beta=beta,
        E0=E0,
        E1=E1,
        M_alpha=species.M + E0 / constants.c**2,
        degeneracy=2 * beta.j + 1,
        M=species.M,
        c=constants.c,
    )


def level_table(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    n_max: int,
    constants: PhysicalConstants = ATOMIC,
    *,
    threads: int = 1,
) -> List[EnergyLevel]:
    """
    Enumerate every state with n <= n_max and its energies.

    Args:
        species: Species to tabulate.
        wilson: Coefficient set for the first-order shifts.
        n_max: Largest principal quantum number.
        constants: Constants table.
        threads: Worker threads; results are identical to the sequential path.

    Returns:
        Levels sorted by (n, E1, ell, S, j, m_j).
    """
    states = list(enumerate_states(n_max))
    alphas = alpha_coefficients(wilson, species, constants)
    logger.debug("Tabulating %d states for %s up to n=%d", len(states), species.name, n_max)

    def build(beta: QuantumNumbers) -> EnergyLevel:
        return _level(species, wilson, beta, constants, alphas)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            levels = list(pool.map(build, states))
    else:
        levels = [build(beta) for beta in states]
    return sorted(levels, key=lambda level: level.sort_key)


@dataclass(frozen=True)
class DispersionSample:
    """Energy of one (n, ell, S, j) level at c.m. momentum P."""
    n: int
    ell: int
    S: int
    j: int
    P: float
    energy: float
    energy_minus_rest: float


def dispersion_table(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    n_max: int,
    momenta: Sequence[float] | Iterable[float],
    constants: PhysicalConstants = ATOMIC,
    *,
    include_P4: bool = True,
) -> List[DispersionSample]:
    """
    Sample the c.m. dispersion of every level up to n_max.

    `energy_minus_rest` subtracts the bare rest energy M c^2 so the internal
    splittings stay resolvable in double precision.
    """
    from ..clock.dispersion import dispersion_minus_rest

    momenta = [float(p) for p in momenta]
    alphas = alpha_coefficients(wilson, species, constants)
    rest = species.M * constants.c**2
    samples: List[DispersionSample] = []
    seen: set[tuple[int, int, int, int]] = set()
    for beta in enumerate_states(n_max):
        if beta.level_key in seen:
            continue
        seen.add(beta.level_key)
        level = _level(species, wilson, beta, constants, alphas)
        for P in momenta:
            shifted = dispersion_minus_rest(
                level.E0, level.E1, P, species.M, include_P4=include_P4, constants=constants
            )
            samples.append(
                DispersionSample(
                    n=beta.n,
                    ell=beta.ell,
                    S=beta.S,
                    j=beta.j,
                    P=P,
                    energy=rest + shifted,
                    energy_minus_rest=shifted,
                )
            )
    return samples
