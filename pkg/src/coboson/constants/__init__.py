"""
Physical constants, unit conversion and species construction.
"""

from .species import (
    CLOCK_PRESETS,
    SPECIES_PRESETS,
    ClockPreset,
    SpeciesParams,
    clock_preset_data,
    make_species,
    species_preset,
)
from .table import ATOMIC, CONSTANTS_VERSION, PhysicalConstants, dump_constants
from .units import convert, normalize_unit, parse_quantity, to_atomic, unit_dimension

__all__ = [
    "ATOMIC",
    "CLOCK_PRESETS",
    "CONSTANTS_VERSION",
    "ClockPreset",
    "PhysicalConstants",
    "SPECIES_PRESETS",
    "SpeciesParams",
    "clock_preset_data",
    "convert",
    "dump_constants",
    "make_species",
    "normalize_unit",
    "parse_quantity",
    "species_preset",
    "to_atomic",
    "unit_dimension",
]
