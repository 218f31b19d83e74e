"""
Observables and the discrete energy functional shared with the stepper.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Dict, Tuple

import numpy as np
from scipy.optimize import brentq

from ..errors import DomainError
from .problem import GpeProblem, GpeState


@dataclass(frozen=True)
class EnergyTerms:
    kinetic: float
    linear: float
    interaction: float
    total_norm: float

    @property
    def energy(self) -> float:
        return self.kinetic + self.linear + self.interaction

    @property
    def chemical_potential(self) -> float:
        if self.total_norm == 0.0:
            return float("nan")
        return (self.kinetic + self.linear + 2.0 * self.interaction) / self.total_norm


@dataclass(frozen=True)
class GpeObservables:
    """
    Snapshot diagnostics. `energy` and `chemical_potential` are relative to the
    problem's reference energy; the `_absolute` fields add it back.
    """
    t: float
    norms: Tuple[float, ...]
    total_norm: float
    energy: float
    energy_absolute: float
    chemical_potential: float
    chemical_potential_absolute: float
    kinetic_energy: float
    interaction_energy: float
    centers: Tuple[float, ...]
    widths: Tuple[float, ...]
    populations: Tuple[float, ...]
    relative_phases: Tuple[float, ...]

    def as_dict(self) -> Dict[str, object]:
        return asdict(self)


def nonlinear_matrix(problem: GpeProblem, psi: np.ndarray) -> np.ndarray | None:
    """sum_{nu, mu} eta[alpha, nu, beta, mu] conj(psi_nu) psi_mu, shape (points, modes, modes)."""
    if problem.contact is None:
        return None
    return np.einsum("anbm,nx,mx->xab", problem.contact, np.conj(psi), psi)


def local_hamiltonian(problem: GpeProblem, psi: np.ndarray, t: float) -> np.ndarray:
    """Per-point mode Hamiltonian: offsets + potentials + coupling(t) + frozen-density contact part."""
    m, n_points = psi.shape
    H = np.zeros((n_points, m, m), dtype=complex)
    diagonal = problem.relative_offsets[:, None] + problem.potentials
    index = np.arange(m)
    H[:, index, index] = diagonal.T
    coupling = problem.coupling_at(t)
    if coupling is not None:
        H = H + coupling
    nonlinear = nonlinear_matrix(problem, psi)
    if nonlinear is not None:
        H = H + nonlinear
    return H


def energy_terms(problem: GpeProblem, state: GpeState) -> EnergyTerms:
    """Kinetic, one-body local and interaction parts of the energy functional."""
    grid = problem.grid
    psi = state.psi
    psi_k = np.fft.fft(psi, axis=1)
    kinetic = float(np.sum(problem.kinetic() * np.abs(psi_k) ** 2)) * grid.dx / grid.points

    density = np.abs(psi) ** 2
    linear = float(np.sum((problem.relative_offsets[:, None] + problem.potentials) * density)) * grid.dx
    coupling = problem.coupling_at(state.t)
    if coupling is not None:
        linear += float(np.real(np.einsum("ax,xab,bx->", np.conj(psi), coupling, psi))) * grid.dx

    interaction = 0.0
    if problem.contact is not None:
        interaction = 0.5 * float(
            np.real(np.einsum("anbm,ax,nx,mx,bx->", problem.contact, np.conj(psi), np.conj(psi), psi, psi))
        ) * grid.dx
    return EnergyTerms(kinetic=kinetic, linear=linear, interaction=interaction, total_norm=float(np.sum(density)) * grid.dx)


def observables(state: GpeState, problem: GpeProblem) -> GpeObservables:
    grid = problem.grid
    psi = state.psi
    density = np.abs(psi) ** 2
    norms = grid.integrate(density)
    total = float(np.sum(norms))
    x = grid.x
    centers = []
    widths = []
    for index in range(problem.n_modes):
        if norms[index] > 0.0:
            mean = float(grid.integrate(x * density[index]) / norms[index])
            second = float(grid.integrate(x * x * density[index]) / norms[index])
            centers.append(mean)
            widths.append(math.sqrt(max(second - mean * mean, 0.0)))
        else:
            centers.append(float("nan"))
            widths.append(float("nan"))
    populations = norms / total if total > 0.0 else np.zeros_like(norms)
    overlaps = grid.integrate(np.conj(psi[0])[None, :] * psi)
    phases = np.angle(overlaps)
    phases[0] = 0.0

    terms = energy_terms(problem, state)
    reference = float(problem.reference_energy)
    return GpeObservables(
        t=state.t,
        norms=tuple(float(value) for value in norms),
        total_norm=total,
        energy=terms.energy,
        energy_absolute=terms.energy + reference * terms.total_norm,
        chemical_potential=terms.chemical_potential,
        chemical_potential_absolute=terms.chemical_potential + reference,
        kinetic_energy=terms.kinetic,
        interaction_energy=terms.interaction,
        centers=tuple(centers),
        widths=tuple(widths),
        populations=tuple(float(value) for value in populations),
        relative_phases=tuple(float(value) for value in phases),
    )


def thomas_fermi_density(problem: GpeProblem, mode_index: int = 0, norm: float = 1.0) -> Tuple[np.ndarray, float]:
    """
    Thomas-Fermi profile max(0, (mu - V)/g) of one mode, with mu fixed by the norm.

    V includes the mode's offset relative to the reference energy; g = eta[i, i, i, i].

    Returns:
        (density on the grid, mu relative to the reference energy).

    Raises:
        DomainError: If the mode has no repulsive self-interaction or norm <= 0.
    """
    if problem.contact is None:
        raise DomainError("Thomas-Fermi profile needs a contact interaction")
    g = float(np.real(problem.contact[mode_index, mode_index, mode_index, mode_index]))
    if not g > 0:
        raise DomainError(f"Thomas-Fermi profile needs g > 0, got {g}")
    if not norm > 0:
        raise DomainError(f"norm must be positive, got {norm}")
    grid = problem.grid
    potential = problem.potentials[mode_index] + problem.relative_offsets[mode_index]

    def excess(mu: float) -> float:
        return float(grid.integrate(np.maximum(0.0, (mu - potential) / g))) - norm

    lower = float(np.min(potential))
    upper = float(np.max(potential)) + g * norm / grid.length + 1.0
    mu = brentq(excess, lower, upper, xtol=1e-14, rtol=1e-14, maxiter=500)
    return np.maximum(0.0, (mu - potential) / g), mu
