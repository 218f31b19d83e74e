"""
Strang-split spectral time stepping and imaginary-time relaxation.

One step is: half kinetic step with exact spectral phases, a full local step with the
per-point mode Hamiltonian (offsets, potentials, coupling at the midpoint time, contact
term from a frozen density plus one Picard correction), and another half kinetic step.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..errors import ConvergenceError, DomainError, GpeNumericError
from .observables import energy_terms, local_hamiltonian
from .problem import GpeProblem, GpeState, gaussian_field

logger = logging.getLogger(__name__)


@dataclass
class GroundStateResult:
    """
    Outcome of `ground_state`.

    Energies are relative to the problem's reference energy; the `_absolute` fields add it back.
    """
    state: GpeState
    energy: float
    chemical_potential: float
    energy_absolute: float
    chemical_potential_absolute: float
    iterations: int
    energies: List[float] = field(default_factory=list)


def cfl_limit(problem: GpeProblem) -> float:
    """2 pi / E_max with E_max the largest |T_alpha(k)| on the grid."""
    e_max = float(np.max(np.abs(problem.kinetic())))
    return math.inf if e_max == 0.0 else 2.0 * math.pi / e_max


def check_cfl(problem: GpeProblem, dt: float) -> bool:
    limit = cfl_limit(problem)
    if dt >= limit:
        logger.warning("Time step dt=%.6e exceeds the kinetic phase limit 2 pi/E_max=%.6e", dt, limit)
        return False
    return True


def _kinetic_half_step(problem: GpeProblem, psi: np.ndarray, dt: float, imaginary: bool) -> np.ndarray:
    factor = -0.5 * dt if imaginary else -0.5j * dt
    psi_k = np.fft.fft(psi, axis=1)
    return np.fft.ifft(psi_k * np.exp(factor * problem.kinetic()), axis=1)


def _apply_local(H: np.ndarray, psi: np.ndarray, dt: float, imaginary: bool) -> np.ndarray:
    factor = -dt if imaginary else -1j * dt
    m = psi.shape[0]
    off_diagonal = H[:, ~np.eye(m, dtype=bool)]
    if m == 1 or not np.any(off_diagonal):
        diagonal = np.real(np.diagonal(H, axis1=1, axis2=2))
        return psi * np.exp(factor * diagonal.T)
    eigenvalues, vectors = np.linalg.eigh(H)
    propagator = np.einsum("xab,xb,xcb->xac", vectors, np.exp(factor * eigenvalues), np.conj(vectors))
    return np.einsum("xab,bx->ax", propagator, psi)


def _advance(problem: GpeProblem, state: GpeState, dt: float, imaginary: bool) -> GpeState:
    psi = _kinetic_half_step(problem, state.psi, dt, imaginary)
    t_mid = state.t + 0.5 * dt
    H0 = local_hamiltonian(problem, psi, t_mid)
    predicted = _apply_local(H0, psi, dt, imaginary)
    if problem.contact is not None:
        H1 = local_hamiltonian(problem, predicted, t_mid)
        psi = _apply_local(0.5 * (H0 + H1), psi, dt, imaginary)
    else:
        psi = predicted
    psi = _kinetic_half_step(problem, psi, dt, imaginary)
    step_index = state.step_index + 1
    t = state.t if imaginary else state.t + dt
    for index, label in enumerate(problem.labels):
        if not np.all(np.isfinite(psi[index])):
            raise GpeNumericError(step_index, t, label)
    return GpeState(psi=psi, t=t, step_index=step_index)


def step(problem: GpeProblem, state: GpeState, dt: float, *, imaginary: bool = False) -> GpeState:
    """
    Advance by one Strang step of size dt (imaginary time when `imaginary`, with t held fixed).

    Raises:
        DomainError: If dt <= 0 or the state does not match the problem.
        GpeNumericError: If any mode becomes non-finite.
    """
    _check_inputs(problem, state, dt)
    check_cfl(problem, dt)
    return _advance(problem, state, dt, imaginary)


def _check_inputs(problem: GpeProblem, state: GpeState, dt: float) -> None:
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    expected = (problem.n_modes, problem.grid.points)
    if state.psi.shape != expected:
        raise DomainError(f"State has shape {state.psi.shape}, problem expects {expected}")


def evolve(
    problem: GpeProblem,
    state: GpeState,
    dt: float,
    steps: int,
    snap_every: int = 0,
    callback: Optional[Callable[[GpeState], None]] = None,
) -> GpeState:
    """
    Real-time evolution for `steps` steps.

    `callback` receives the initial state and every `snap_every`-th state when snap_every > 0.
    """
    _check_inputs(problem, state, dt)
    if steps < 0:
        raise DomainError(f"steps must be non-negative, got {steps}")
    check_cfl(problem, dt)
    snapshots = callback is not None and snap_every > 0
    if snapshots:
        callback(state)
    current = state
    for count in range(1, steps + 1):
        current = _advance(problem, current, dt, imaginary=False)
        if snapshots and count % snap_every == 0:
            callback(current)
    return current


def _renormalize(psi: np.ndarray, dx: float, target: float) -> np.ndarray:
    norm = float(np.sum(np.abs(psi) ** 2)) * dx
    if norm == 0.0:
        raise DomainError("Cannot renormalize a vanishing field")
    return psi * math.sqrt(target / norm)


def ground_state(
    problem: GpeProblem,
    mode_weights: Optional[Sequence[float]] = None,
    tol: float = 1e-10,
    *,
    dtau: float = 1e-3,
    max_iter: int = 100_000,
    initial: Optional[GpeState] = None,
) -> GroundStateResult:
    """
    Imaginary-time relaxation to the lowest state with total norm sum(mode_weights).

    Without `initial`, mode alpha starts as a centered Gaussian of width length/10 carrying
    norm mode_weights[alpha]. Convergence is declared when
    |E_n - E_{n-1}| < tol * max(|E_n|, 1) with E relative to the reference energy.

    Raises:
        DomainError: For bad weights, tol or dtau.
        ConvergenceError: After max_iter iterations, with the history of relative changes.
    """
    m = problem.n_modes
    weights = np.full(m, 1.0 / m) if mode_weights is None else np.asarray(mode_weights, dtype=float)
    if weights.shape != (m,) or np.any(weights < 0) or not np.sum(weights) > 0:
        raise DomainError(f"mode_weights must be {m} non-negative numbers with a positive sum, got {weights}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if not dtau > 0:
        raise DomainError(f"dtau must be positive, got {dtau}")
    target = float(np.sum(weights))
    grid = problem.grid

    if initial is None:
        seed = gaussian_field(grid, sigma=grid.length / 10.0)
        psi = np.sqrt(weights)[:, None] * seed[None, :]
        state = GpeState(psi=psi)
    else:
        _check_inputs(problem, initial, dtau)
        state = GpeState(psi=_renormalize(initial.psi, grid.dx, target), t=initial.t)

    terms = energy_terms(problem, state)
    energy = terms.energy
    energies = [energy]
    history: List[float] = []
    for iteration in range(1, max_iter + 1):
        state = _advance(problem, state, dtau, imaginary=True)
        state.psi = _renormalize(state.psi, grid.dx, target)
        terms = energy_terms(problem, state)
        change = abs(terms.energy - energy) / max(abs(terms.energy), 1.0)
        if terms.energy > energy + 1e-12 * max(abs(energy), 1.0):
            logger.debug("Energy rose at iteration %d: %.15e -> %.15e", iteration, energy, terms.energy)
        energy = terms.energy
        energies.append(energy)
        history.append(change)
        if change < tol:
            logger.info("Imaginary-time relaxation converged after %d iterations (E=%.12e)", iteration, energy)
            reference = float(problem.reference_energy)
            return GroundStateResult(
                state=state,
                energy=energy,
                chemical_potential=terms.chemical_potential,
                energy_absolute=energy + reference * terms.total_norm,
                chemical_potential_absolute=terms.chemical_potential + reference,
                iterations=iteration,
                energies=energies,
            )
    raise ConvergenceError(f"Imaginary-time relaxation did not converge in {max_iter} iterations", history)
