"""
Coupling table for orbital angular momentum ell and total spin S (two spin-1/2 constituents).

The (ell, 1) row carries the opposite overall phase to the Condon-Shortley
convention; every physical quantity is insensitive to it.
"""

from __future__ import annotations

import math
from typing import Dict, Tuple

from ..errors import DomainError

# (j - ell, S) for each row of the table.
ROWS: Tuple[Tuple[int, int], ...] = ((1, 1), (0, 1), (-1, 1), (0, 0))
SPIN_PROJECTIONS: Tuple[int, ...] = (1, 0, -1)


def _check_row(j: int, S: int, ell: int) -> None:
    if ell < 0:
        raise DomainError(f"ell must be >= 0, got {ell}")
    if S not in (0, 1):
        raise DomainError(f"S must be 0 or 1, got {S}")
    if (j - ell, S) not in ROWS:
        raise DomainError(f"(j={j}, S={S}) is not a row of the coupling table for ell={ell}")
    if S == 1 and j <= ell and ell < 1:
        raise DomainError(f"Row (j={j}, S=1) is empty for ell=0")


def _sqrt(numerator: float, denominator: float) -> float:
    return math.sqrt(max(numerator, 0.0) / denominator)


def clebsch_gordan(j: int, S: int, m_S: int, ell: int, m_j: int) -> float:
    """
    Return the coefficient of psi_{n, ell, m_j - m_S} chi_{S, m_S} in the coupled state |j m_j>.

    Args:
        j: Total angular momentum quantum number.
        S: Total spin (0 or 1).
        m_S: Spin projection (-1, 0 or 1).
        ell: Orbital angular momentum.
        m_j: Total projection.

    Returns:
        The table entry, or 0 outside its support (|m_j| > j or |m_j - m_S| > ell).

    Raises:
        DomainError: If (j, S) is not a row for this ell or m_S is not a spin projection.
    """
    _check_row(j, S, ell)
    if m_S not in SPIN_PROJECTIONS:
        raise DomainError(f"m_S must be -1, 0 or 1, got {m_S}")
    if abs(m_j) > j or abs(m_j - m_S) > ell:
        return 0.0
    if S == 0:
        return 1.0 if m_S == 0 else 0.0

    l = float(ell)
    m = float(m_j)
    if j == ell + 1:
        if m_S == 1:
            return _sqrt((l + m) * (l + m + 1), 2 * (l + 1) * (2 * l + 1))
        if m_S == 0:
            return _sqrt((l - m + 1) * (l + m + 1), (l + 1) * (2 * l + 1))
        return _sqrt((l - m) * (l - m + 1), 2 * (l + 1) * (2 * l + 1))
    if j == ell:
        if m_S == 1:
            return _sqrt((l + m) * (l - m + 1), 2 * l * (l + 1))
        if m_S == 0:
            return -m / math.sqrt(l * (l + 1))
        return -_sqrt((l - m) * (l + m + 1), 2 * l * (l + 1))
    # j == ell - 1
    if m_S == 1:
        return _sqrt((l - m) * (l - m + 1), 2 * l * (2 * l + 1))
    if m_S == 0:
        return -_sqrt((l - m) * (l + m), l * (2 * l + 1))
    return _sqrt((l + m) * (l + m + 1), 2 * l * (2 * l + 1))


def coefficient_vector(j: int, S: int, ell: int, m_j: int) -> Dict[int, float]:
    """Return {m_S: coefficient} for one row, including zero entries."""
    return {m_S: clebsch_gordan(j, S, m_S, ell, m_j) for m_S in SPIN_PROJECTIONS}
