"""
Matrix elements between coupled states: overlaps, electric dipoles, the C6 sum and Zeeman shifts.
"""

from __future__ import annotations

import logging
from typing import List

import numpy as np

from ..constants import ATOMIC, PhysicalConstants, SpeciesParams
from ..errors import DomainError
from ..spectrum import QuantumNumbers, WilsonCoefficients, energy0
from .radial import RadialFunction, quad_dimensionless
from .spinor import SpinorWavefunction, direction_matrices

logger = logging.getLogger(__name__)

C6_HYDROGEN_REFERENCE = 6.499
# Dipole-dipole weights (1, 1, -2) for Delta R along z.
_DD_WEIGHTS = np.array([1.0, 1.0, -2.0])


def dipole_prefactor(species: SpeciesParams) -> float:
    """m_r (q_e/m_e - q_n/m_n): d = prefactor * r."""
    return species.m_r * (species.q_e / species.m_e - species.q_n / species.m_n)


def radial_overlap(first: RadialFunction, second: RadialFunction, power: int = 0) -> float:
    """int R_1 R_2 r^(2 + power) dr for two radial functions of one species."""
    a_Z = first.a_Z
    upper = max(first.x_max, second.x_max)
    value = quad_dimensionless(
        lambda x: first.u(x) * second.u(x) * x ** (2 + power),
        upper,
        f"<{first.n},{first.ell}|r^{power}|{second.n},{second.ell}>",
    )
    return value * a_Z**power


def overlap(species: SpeciesParams, beta: QuantumNumbers, beta_prime: QuantumNumbers) -> float:
    """<beta|beta'> from radial quadrature and the coupled orbital-spin vectors."""
    if beta.ell != beta_prime.ell:
        return 0.0
    first = SpinorWavefunction(beta, species)
    second = SpinorWavefunction(beta_prime, species)
    angular = np.vdot(first.vector, second.vector)
    if abs(angular) == 0.0:
        return 0.0
    return float(np.real(angular * radial_overlap(first.radial, second.radial)))


def transition_dipole(
    species: SpeciesParams,
    beta: QuantumNumbers,
    beta_prime: QuantumNumbers,
) -> np.ndarray:
    """
    <beta| d |beta'> as a complex (x, y, z) vector, d = m_r (q_e/m_e - q_n/m_n) r.

    Selection rules (Delta ell = +-1, Delta S = 0, |Delta m_j| <= 1) are not imposed;
    they emerge from the matrix elements.
    """
    first = SpinorWavefunction(beta, species)
    second = SpinorWavefunction(beta_prime, species)
    if abs(beta.ell - beta_prime.ell) != 1:
        return np.zeros(3, dtype=complex)
    directions = direction_matrices(beta.ell, beta_prime.ell)
    eye_s = np.eye(4, dtype=complex)
    angular = np.array(
        [np.vdot(first.vector, np.kron(directions[a], eye_s) @ second.vector) for a in range(3)],
        dtype=complex,
    )
    if not np.any(np.abs(angular) > 0.0):
        return np.zeros(3, dtype=complex)
    radial = radial_overlap(first.radial, second.radial, power=1)
    return dipole_prefactor(species) * radial * angular


def c6_sum_over_states(
    species: SpeciesParams,
    n_basis: int,
    constants: PhysicalConstants = ATOMIC,
) -> float:
    """
    Discrete sum-over-states C6 for two ground-state cobosons.

    Sums |<1s 1s| V_dd |a b>|^2 / (Delta_a + Delta_b) over np singlet states
    a, b with n = 2..n_basis, using the physical dipole-dipole coupling
    (d1.d2 - 3 d1z d2z)/(4 pi eps0 |Delta R|^3). Continuum states are not
    included, so the result is a lower bound that grows with n_basis.

    Raises:
        DomainError: If n_basis < 2.
    """
    if isinstance(n_basis, bool) or int(n_basis) != n_basis or n_basis < 2:
        raise DomainError(f"n_basis must be an integer >= 2, got {n_basis!r}")
    ground = QuantumNumbers(1, 0, 0, 0, 0)
    ground_energy = energy0(species, 1, constants)
    coupling = 1.0 / (4.0 * np.pi * constants.eps0)
    excitations: List[float] = []
    dipoles: List[np.ndarray] = []
    for n in range(2, int(n_basis) + 1):
        gap = energy0(species, n, constants) - ground_energy
        for m_j in (-1, 0, 1):
            excitations.append(gap)
            dipoles.append(transition_dipole(species, ground, QuantumNumbers(n, 1, 0, 1, m_j)))
    gaps = np.asarray(excitations)
    elements = np.asarray(dipoles)
    # coupled[a, b] = sum_i w_i D_a,i D_b,i
    coupled = coupling * np.einsum("i,ai,bi->ab", _DD_WEIGHTS, elements, elements)
    denominators = gaps[:, None] + gaps[None, :]
    value = float(np.sum(np.abs(coupled) ** 2 / denominators))
    logger.info(
        "C6 sum over %d discrete pair states (n_basis=%d): %.6f (%.1f%% of %.3f)",
        len(gaps) ** 2,
        n_basis,
        value,
        100.0 * value / C6_HYDROGEN_REFERENCE,
        C6_HYDROGEN_REFERENCE,
    )
    return value


def magnetic_moment_operator(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    state: SpinorWavefunction,
) -> np.ndarray:
    """z component of mu_ell + mu_n + mu_e on the coupled basis of `state`."""
    ops = state.operators
    orbital = species.m_r * (species.q_e / species.m_e**2 + species.q_n / species.m_n**2) / 2.0
    nucleus = wilson.cF_n * species.q_n / species.m_n
    electron = wilson.cF_e * species.q_e / species.m_e
    return orbital * ops.L[2] + nucleus * ops.s_n[2] + electron * ops.s_e[2]


def zeeman_shift(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    beta: QuantumNumbers,
    B: float,
) -> float:
    """
    Diagonal Zeeman shift <beta| -(mu_ell + mu_n + mu_e) . B z^ |beta> (Hartree, B in atomic units).

    Off-diagonal mixing between levels is ignored; the value is meant as a per-state
    <h_I> offset for clock and GPE modes.
    """
    state = SpinorWavefunction(beta, species)
    return -B * state.expectation(magnetic_moment_operator(species, wilson, state))
