"""
Unit conversion between atomic units and laboratory units.
"""

from __future__ import annotations

import re
from typing import Dict, Optional, Tuple

from ..errors import UnitError
from .table import (
    AU_TIME_IN_S,
    AU_VELOCITY_IN_M_PER_S,
    BOHR_IN_M,
    ELECTRON_MASS_IN_MEV,
    ELECTRON_MASS_IN_U,
    ELECTRON_MASS_SI,
    HARTREE_IN_EV,
    HARTREE_IN_HZ,
    HARTREE_IN_J,
    HARTREE_IN_K,
    HARTREE_IN_WAVENUMBER,
    INVERSE_FINE_STRUCTURE,
)

# Size of one unit expressed in atomic units, grouped by dimension.
# Frequencies and temperatures are energy equivalents (E = h nu, E = k_B T).
_UNITS: Dict[str, Tuple[str, float]] = {
    "hartree": ("energy", 1.0),
    "eV": ("energy", 1.0 / HARTREE_IN_EV),
    "meV": ("energy", 1e-3 / HARTREE_IN_EV),
    "J": ("energy", 1.0 / HARTREE_IN_J),
    "Hz": ("energy", 1.0 / HARTREE_IN_HZ),
    "kHz": ("energy", 1e3 / HARTREE_IN_HZ),
    "MHz": ("energy", 1e6 / HARTREE_IN_HZ),
    "GHz": ("energy", 1e9 / HARTREE_IN_HZ),
    "K": ("energy", 1.0 / HARTREE_IN_K),
    "cm-1": ("energy", 1.0 / HARTREE_IN_WAVENUMBER),
    "bohr": ("length", 1.0),
    "m": ("length", 1.0 / BOHR_IN_M),
    "um": ("length", 1e-6 / BOHR_IN_M),
    "nm": ("length", 1e-9 / BOHR_IN_M),
    "angstrom": ("length", 1e-10 / BOHR_IN_M),
    "au_time": ("time", 1.0),
    "s": ("time", 1.0 / AU_TIME_IN_S),
    "ms": ("time", 1e-3 / AU_TIME_IN_S),
    "us": ("time", 1e-6 / AU_TIME_IN_S),
    "ns": ("time", 1e-9 / AU_TIME_IN_S),
    "fs": ("time", 1e-15 / AU_TIME_IN_S),
    "m_e": ("mass", 1.0),
    "kg": ("mass", 1.0 / ELECTRON_MASS_SI),
    "u": ("mass", 1.0 / ELECTRON_MASS_IN_U),
    "MeV/c2": ("mass", 1.0 / ELECTRON_MASS_IN_MEV),
    "au_velocity": ("velocity", 1.0),
    "m/s": ("velocity", 1.0 / AU_VELOCITY_IN_M_PER_S),
    "c": ("velocity", INVERSE_FINE_STRUCTURE),
}

_UNIT_ALIASES: Dict[str, str] = {
    "Eh": "hartree",
    "Ha": "hartree",
    "au_energy": "hartree",
    "ev": "eV",
    "a0": "bohr",
    "au_length": "bohr",
    "Å": "angstrom",
    "A": "angstrom",
    "au_mass": "m_e",
    "amu": "u",
}

_QUANTITY_PATTERN = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(\S+)?\s*$")


def normalize_unit(unit: str) -> str:
    """Return the canonical unit name, raising UnitError for unknown units."""
    token = unit.strip()
    token = _UNIT_ALIASES.get(token, token)
    if token not in _UNITS:
        allowed = ", ".join(sorted(_UNITS))
        raise UnitError(f"Unknown unit '{unit}'. Allowed: {allowed}.")
    return token


def unit_dimension(unit: str) -> str:
    return _UNITS[normalize_unit(unit)][0]


def convert(value: float, from_unit: str, to_unit: str) -> float:
    """
    Convert a value between two dimensionally compatible units.

    Args:
        value: Number expressed in `from_unit`.
        from_unit: Source unit (e.g. "hartree", "eV", "MHz", "bohr", "m_e").
        to_unit: Target unit.

    Returns:
        The value expressed in `to_unit`.

    Raises:
        UnitError: If either unit is unknown or their dimensions differ.
    """
    source = normalize_unit(from_unit)
    target = normalize_unit(to_unit)
    source_dim, source_factor = _UNITS[source]
    target_dim, target_factor = _UNITS[target]
    if source_dim != target_dim:
        raise UnitError(f"Cannot convert {source} ({source_dim}) to {target} ({target_dim}).")
    if source == target:
        return float(value)
    return float(value) * source_factor / target_factor


def to_atomic(value: float, unit: str) -> float:
    """Convert a value in `unit` to the atomic unit of the same dimension."""
    canonical = normalize_unit(unit)
    return float(value) * _UNITS[canonical][1]


def parse_quantity(text: str | float | int, dimension: Optional[str] = None) -> float:
    """
    Parse a number with an optional unit suffix into atomic units.

    Plain numbers are taken to be in atomic units already.

    Args:
        text: A number or a string such as "1.78 eV" or "0.5 nm".
        dimension: Optional expected dimension; a mismatch raises UnitError.
    """
    if isinstance(text, bool):
        raise UnitError(f"Expected a number, got {text!r}")
    if isinstance(text, (int, float)):
        return float(text)
    match = _QUANTITY_PATTERN.match(text)
    if not match:
        raise UnitError(f"Cannot parse quantity '{text}'; expected '<number> <unit>'.")
    number, unit = match.groups()
    if unit is None:
        return float(number)
    canonical = normalize_unit(unit)
    if dimension is not None and _UNITS[canonical][0] != dimension:
        raise UnitError(f"'{text}' has dimension {_UNITS[canonical][0]}, expected {dimension}.")
    return to_atomic(float(number), canonical)
