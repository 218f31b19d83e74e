"""
Second-order Doppler shifts of a moving clock.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List

from ..constants import ATOMIC, PhysicalConstants
from ..errors import DomainError


@dataclass(frozen=True)
class DopplerSample:
    v: float
    Omega_shifted: float
    relative_shift: float


def doppler_shift(Omega: float, v: float, constants: PhysicalConstants = ATOMIC) -> float:
    """
    Omega' = Omega (1 - (v/c)^2 / 2).

    Raises:
        DomainError: If |v| >= c.
    """
    if abs(v) >= constants.c:
        raise DomainError(f"Velocity must satisfy |v| < c = {constants.c}, got {v}")
    beta = v / constants.c
    return Omega * (1.0 - 0.5 * beta * beta)


def doppler_shift_thermal(
    Omega: float,
    P_sq_expectation: float,
    M_bar: float,
    constants: PhysicalConstants = ATOMIC,
) -> float:
    """Omega' = Omega (1 - <P^2>/(2 M_bar^2 c^2))."""
    if not M_bar > 0:
        raise DomainError(f"Mean mass must be positive, got {M_bar}")
    if P_sq_expectation < 0:
        raise DomainError(f"<P^2> cannot be negative, got {P_sq_expectation}")
    return Omega * (1.0 - P_sq_expectation / (2.0 * M_bar**2 * constants.c**2))


def thermal_momentum_sq(M_bar: float, temperature: float) -> float:
    """
    <P^2> = M_bar k_B T for one Cartesian direction.

    `temperature` is k_B T in Hartree; convert kelvin with `convert(T, "K", "hartree")`.
    """
    if temperature < 0:
        raise DomainError(f"Temperature cannot be negative, got {temperature}")
    return M_bar * temperature


def doppler_sweep(
    Omega: float,
    velocities: Iterable[float],
    constants: PhysicalConstants = ATOMIC,
) -> List[DopplerSample]:
    samples = []
    for v in velocities:
        shifted = doppler_shift(Omega, v, constants)
        samples.append(DopplerSample(v=float(v), Omega_shifted=shifted, relative_shift=shifted / Omega - 1.0))
    return samples
