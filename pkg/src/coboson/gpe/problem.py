"""
Data model of the multi-mode modified Gross-Pitaevskii equation on a periodic 1D grid.

Each mode alpha carries its own mass M_alpha, an energy offset M_alpha c^2 + E1 + <h_I>,
and an external potential. Modes are coupled by a Hermitian matrix T(x, t) and by the
contact tensor eta[alpha, nu, beta, mu], which enters mode alpha's equation as
sum eta[alpha, nu, beta, mu] conj(psi_nu) psi_mu psi_beta.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..constants import ATOMIC, PhysicalConstants, SpeciesParams
from ..errors import DomainError
from ..spectrum import QuantumNumbers, WilsonCoefficients, energy0, energy1, validate

logger = logging.getLogger(__name__)

HERMITIAN_TOLERANCE = 1e-12

CouplingFn = Callable[[np.ndarray, float], np.ndarray]
Coupling = Union[CouplingFn, np.ndarray, None]


@dataclass(frozen=True)
class Grid1D:
    """
    Periodic grid x_j = (j - N/2) dx, j = 0..N-1, with dx = length/points.
    """
    length: float
    points: int

    def __post_init__(self) -> None:
        if not self.length > 0:
            raise DomainError(f"Grid length must be positive, got {self.length}")
        if isinstance(self.points, bool) or int(self.points) != self.points or self.points < 2:
            raise DomainError(f"Grid needs at least 2 points, got {self.points!r}")

    @property
    def dx(self) -> float:
        return self.length / self.points

    @property
    def x(self) -> np.ndarray:
        return (np.arange(self.points) - self.points // 2) * self.dx

    @property
    def k(self) -> np.ndarray:
        return 2.0 * math.pi * np.fft.fftfreq(self.points, d=self.dx)

    @property
    def shape(self) -> Tuple[int]:
        return (self.points,)

    @property
    def ndim(self) -> int:
        return 1

    def wavenumber(self, index: int) -> float:
        """Grid-aligned wavenumber 2 pi index / length."""
        return 2.0 * math.pi * index / self.length

    def integrate(self, values: np.ndarray) -> np.ndarray:
        return np.sum(values, axis=-1) * self.dx


@dataclass(frozen=True, eq=False)
class GpeMode:
    """
    One internal state as a condensate mode.

    The offset M_alpha c^2 + E1 + <h_I> is stored as rest_energy + offset. Builders put
    the common bare rest energy M c^2 into rest_energy so it cancels exactly between modes.

    Attributes:
        label: Name used in tables and error messages.
        mass: State-dependent mass M_alpha.
        offset: Internal energy part of the mode energy.
        potential: External potential sampled on the grid, or None for zero.
        rest_energy: Part of the mode energy kept apart for precision.
    """
    label: str
    mass: float
    offset: float = 0.0
    potential: Optional[np.ndarray] = None
    rest_energy: float = 0.0

    def __post_init__(self) -> None:
        if not self.mass > 0:
            raise DomainError(f"Mode '{self.label}' needs a positive mass, got {self.mass}")
        if self.potential is not None:
            object.__setattr__(self, "potential", np.asarray(self.potential, dtype=float))

    @property
    def energy(self) -> float:
        return self.rest_energy + self.offset


@dataclass
class GpeState:
    """Fields psi with shape (modes, points) at time t."""
    psi: np.ndarray
    t: float = 0.0
    step_index: int = 0

    def __post_init__(self) -> None:
        self.psi = np.array(self.psi, dtype=complex, ndmin=2)

    @property
    def n_modes(self) -> int:
        return self.psi.shape[0]

    def copy(self) -> "GpeState":
        return GpeState(psi=self.psi.copy(), t=self.t, step_index=self.step_index)


@dataclass
class GpeProblem:
    """
    Multi-mode problem definition.

    Attributes:
        grid: Periodic grid.
        modes: Condensate modes.
        coupling: Callable (x, t) -> (N, m, m) Hermitian array, a constant (m, m) matrix, or None.
        contact: Dense contact tensor eta[alpha, nu, beta, mu] of shape (m, m, m, m), or None.
        include_P4: Include the -P^4/(8 M^3 c^2) kinetic correction.
        c: Speed of light for the P^4 term.
        bare_mass: Bare total mass M of the P^4 term; defaults to the smallest mode mass.
        reference_energy: Gauge energy subtracted from every mode; defaults to the lowest mode energy.
    """
    grid: Grid1D
    modes: Sequence[GpeMode]
    coupling: Coupling = None
    contact: Optional[np.ndarray] = None
    include_P4: bool = False
    c: float = ATOMIC.c
    bare_mass: Optional[float] = None
    reference_energy: Optional[float] = None
    _reference: Tuple[float, float] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.modes = list(self.modes)
        if not self.modes:
            raise DomainError("A GPE problem needs at least one mode")
        for mode in self.modes:
            if mode.potential is not None and mode.potential.shape != self.grid.shape:
                raise DomainError(
                    f"Potential of mode '{mode.label}' has shape {mode.potential.shape}, grid is {self.grid.shape}"
                )
        if self.bare_mass is None:
            self.bare_mass = min(mode.mass for mode in self.modes)
        if not self.bare_mass > 0:
            raise DomainError(f"bare_mass must be positive, got {self.bare_mass}")
        if not self.c > 0:
            raise DomainError(f"c must be positive, got {self.c}")
        if self.reference_energy is None:
            lowest = min(self.modes, key=lambda mode: mode.energy)
            self._reference = (lowest.rest_energy, lowest.offset)
            self.reference_energy = lowest.energy
        else:
            self._reference = (0.0, float(self.reference_energy))
        self._check_coupling()
        self._check_contact()

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def masses(self) -> np.ndarray:
        return np.array([mode.mass for mode in self.modes])

    @property
    def labels(self) -> List[str]:
        return [mode.label for mode in self.modes]

    @property
    def relative_offsets(self) -> np.ndarray:
        """Mode energies minus the reference energy, without forming the large sums."""
        rest, offset = self._reference
        return np.array([(mode.rest_energy - rest) + (mode.offset - offset) for mode in self.modes])

    @property
    def potentials(self) -> np.ndarray:
        values = np.zeros((self.n_modes, self.grid.points))
        for index, mode in enumerate(self.modes):
            if mode.potential is not None:
                values[index] = mode.potential
        return values

    def kinetic(self) -> np.ndarray:
        """Kinetic symbols T_alpha(k), shape (modes, points)."""
        k = self.grid.k
        values = k[None, :] ** 2 / (2.0 * self.masses[:, None])
        if self.include_P4:
            values = values - k[None, :] ** 4 / (8.0 * self.bare_mass**3 * self.c**2)
        return values

    def coupling_at(self, t: float) -> Optional[np.ndarray]:
        """Coupling matrix on the grid, shape (points, modes, modes), or None."""
        if self.coupling is None:
            return None
        if callable(self.coupling):
            values = np.asarray(self.coupling(self.grid.x, t), dtype=complex)
        else:
            values = np.asarray(self.coupling, dtype=complex)
        m = self.n_modes
        if values.shape == (m, m):
            return np.broadcast_to(values, (self.grid.points, m, m))
        if values.shape != (self.grid.points, m, m):
            raise DomainError(f"Coupling must have shape ({m}, {m}) or ({self.grid.points}, {m}, {m}), got {values.shape}")
        return values

    def _check_coupling(self) -> None:
        values = self.coupling_at(0.0)
        if values is None:
            return
        deviation = np.max(np.abs(values - np.conj(np.swapaxes(values, -1, -2))))
        if deviation > HERMITIAN_TOLERANCE * max(1.0, float(np.max(np.abs(values)))):
            raise DomainError(f"Coupling matrix is not Hermitian (max deviation {deviation:.3e})")

    def _check_contact(self) -> None:
        if self.contact is None:
            return
        eta = np.asarray(self.contact, dtype=complex)
        m = self.n_modes
        if eta.shape != (m, m, m, m):
            raise DomainError(f"Contact tensor must have shape {(m, m, m, m)}, got {eta.shape}")
        scale = max(1.0, float(np.max(np.abs(eta))))
        # eta[a, n, b, m] = conj(eta[b, m, a, n])
        hermitian = np.max(np.abs(eta - np.conj(np.transpose(eta, (2, 3, 0, 1)))))
        if hermitian > HERMITIAN_TOLERANCE * scale:
            raise DomainError(f"Contact tensor is not Hermitian (max deviation {hermitian:.3e})")
        # eta[a, n, b, m] = eta[n, a, m, b]
        exchange = np.max(np.abs(eta - np.transpose(eta, (1, 0, 3, 2))))
        if exchange > HERMITIAN_TOLERANCE * scale:
            logger.warning(
                "Contact tensor is not exchange symmetric (max deviation %.3e); the energy functional is not conserved",
                exchange,
            )
        self.contact = eta


def mode_from_state(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    beta: QuantumNumbers,
    *,
    potential: Optional[np.ndarray] = None,
    h_I: float = 0.0,
    include_E1: bool = True,
    constants: PhysicalConstants = ATOMIC,
    label: Optional[str] = None,
) -> GpeMode:
    """
    Mode for the bound state beta: mass M + E0/c^2 and energy M c^2 + E0 + E1 + h_I.

    h_I is a user-supplied diagonal shift, e.g. from `wavefunctions.zeeman_shift`.
    """
    validate(beta)
    E0 = energy0(species, beta.n, constants)
    E1 = energy1(species, wilson, beta, constants) if include_E1 else 0.0
    return GpeMode(
        label=label or beta.label,
        mass=species.M + E0 / constants.c**2,
        offset=E0 + E1 + h_I,
        potential=potential,
        rest_energy=species.M * constants.c**2,
    )


def constant_coupling(n_modes: int, elements: dict[Tuple[int, int], complex]) -> np.ndarray:
    """
    Hermitian (m, m) matrix from upper-triangle entries {(a, b): T_ab}; T_ba = conj(T_ab).

    For a Rabi frequency Omega between modes a and b pass T_ab = Omega/2.
    """
    matrix = np.zeros((n_modes, n_modes), dtype=complex)
    for (a, b), value in elements.items():
        if not (0 <= a < n_modes and 0 <= b < n_modes):
            raise DomainError(f"Coupling index ({a}, {b}) out of range for {n_modes} modes")
        if a == b:
            matrix[a, a] = complex(value).real
        else:
            matrix[a, b] = value
            matrix[b, a] = np.conj(value)
    return matrix


def dipole_coupling(
    species: SpeciesParams,
    beta_a: QuantumNumbers,
    beta_b: QuantumNumbers,
    amplitude: float,
    *,
    n_modes: int = 2,
    indices: Tuple[int, int] = (0, 1),
    polarization: Sequence[float] = (0.0, 0.0, 1.0),
    frequency: float = 0.0,
) -> CouplingFn:
    """
    Coupling -d_ab . E(t) from a classical field E(t) = amplitude * polarization * cos(frequency t).

    The transition dipole is computed once by quadrature.
    """
    from ..wavefunctions import transition_dipole

    a, b = indices
    unit = np.asarray(polarization, dtype=float)
    norm = float(np.linalg.norm(unit))
    if norm == 0.0:
        raise DomainError("Polarization vector must be nonzero")
    unit = unit / norm
    element = -amplitude * complex(np.dot(unit, transition_dipole(species, beta_a, beta_b)))
    logger.info("Dipole coupling %s <-> %s: |T| = %.6e", beta_a.label, beta_b.label, abs(element))

    def coupling(x: np.ndarray, t: float) -> np.ndarray:
        matrix = constant_coupling(n_modes, {(a, b): element * math.cos(frequency * t)})
        return np.broadcast_to(matrix, (len(x), n_modes, n_modes))

    return coupling


def density_contact(g: np.ndarray | Sequence[Sequence[float]]) -> np.ndarray:
    """
    Contact tensor of density-density interactions, eta[a, b, a, b] = g[a][b].

    Mode a then feels sum_b g[a][b] |psi_b|^2.
    """
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise DomainError(f"g must be a square matrix, got shape {g.shape}")
    m = g.shape[0]
    eta = np.zeros((m, m, m, m), dtype=complex)
    for a in range(m):
        for b in range(m):
            eta[a, b, a, b] = g[a, b]
    return eta


def gaussian_field(grid: Grid1D, center: float = 0.0, sigma: float = 1.0, momentum: float = 0.0) -> np.ndarray:
    """Normalized Gaussian with |psi|^2 of standard deviation sigma and mean momentum `momentum`."""
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    x = grid.x
    field_values = np.exp(-((x - center) ** 2) / (4.0 * sigma**2) + 1j * momentum * x)
    return field_values / math.sqrt(float(grid.integrate(np.abs(field_values) ** 2)))


def plane_wave_field(grid: Grid1D, index: int) -> np.ndarray:
    """Normalized plane wave exp(i k x) with k = 2 pi index / length."""
    return np.exp(1j * grid.wavenumber(index) * grid.x) / math.sqrt(grid.length)


def initial_state(grid: Grid1D, fields: Sequence[np.ndarray | None]) -> GpeState:
    """Stack per-mode fields (None for an empty mode) into a state at t = 0."""
    psi = np.zeros((len(fields), grid.points), dtype=complex)
    for index, values in enumerate(fields):
        if values is not None:
            psi[index] = values
    return GpeState(psi=psi)
