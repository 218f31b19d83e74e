"""
State-dependent c.m. dispersion E_alpha(P) including the mass defect and the P^4 correction.

P is the canonical c.m. momentum; no external vector potential is coupled in.
"""

from __future__ import annotations

import math
from typing import Optional

from ..constants import ATOMIC, PhysicalConstants
from ..errors import DomainError


def _check_masses(*masses: float) -> None:
    for mass in masses:
        if not mass > 0:
            raise DomainError(f"Masses must be positive, got {mass}")


def p4_correction(P: float, M: float, constants: PhysicalConstants = ATOMIC) -> float:
    """-P^4/(8 M^3 c^2) with the bare total mass M."""
    return -(P**4) / (8.0 * M**3 * constants.c**2)


def dispersion(
    M_alpha: float,
    E1: float,
    P: float,
    M: float,
    *,
    include_P4: bool = True,
    h_I: float = 0.0,
    constants: PhysicalConstants = ATOMIC,
) -> float:
    """
    E(P) = M_alpha c^2 + E1 + <h_I> + P^2/(2 M_alpha) - P^4/(8 M^3 c^2).

    Args:
        M_alpha: State-dependent rest mass M (1 + E0/(M c^2)).
        E1: First-order internal shift.
        P: c.m. momentum magnitude.
        M: Bare total mass m_e + m_n (enters only the P^4 term).
        include_P4: Drop the quartic term when False.
        h_I: User-supplied diagonal light or Zeeman shift for this state.
    """
    _check_masses(M_alpha, M)
    energy = M_alpha * constants.c**2 + E1 + h_I + P * P / (2.0 * M_alpha)
    if include_P4:
        energy += p4_correction(P, M, constants)
    return energy


def dispersion_minus_rest(
    E0: float,
    E1: float,
    P: float,
    M: float,
    *,
    include_P4: bool = True,
    constants: PhysicalConstants = ATOMIC,
    h_I: float = 0.0,
) -> float:
    """
    E(P) - M c^2 for the level with unperturbed energy E0.

    M_alpha c^2 - M c^2 = E0 exactly, so the large rest energy never enters the sum.
    """
    _check_masses(M)
    M_alpha = M + E0 / constants.c**2
    _check_masses(M_alpha)
    energy = E0 + E1 + h_I + P * P / (2.0 * M_alpha)
    if include_P4:
        energy += p4_correction(P, M, constants)
    return energy


def dispersion_turnover(
    M: float,
    constants: PhysicalConstants = ATOMIC,
    M_alpha: Optional[float] = None,
) -> float:
    """
    Momentum where dE/dP changes sign: sqrt(2) M c sqrt(M/M_alpha).

    With M_alpha omitted this is sqrt(2) M c; the mass defect only shifts it by O(E/(M c^2)).
    """
    _check_masses(M)
    if M_alpha is None:
        M_alpha = M
    _check_masses(M_alpha)
    return math.sqrt(2.0) * M * constants.c * math.sqrt(M / M_alpha)


def p4_relative_size(v_over_c: float) -> float:
    """
    |P^4 term| / (P^2/(2M)) at P = M v, which equals (v/c)^2/4.
    """
    return v_over_c * v_over_c / 4.0
