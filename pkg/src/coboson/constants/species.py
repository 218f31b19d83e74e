"""
Coboson species: constituent masses, charges and the derived two-body quantities.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict

from ..errors import DomainError
from .table import (
    ALPHA_PARTICLE_ELECTRON_MASS_RATIO,
    ELECTRON_ANOMALY,
    ELECTRON_MASS_IN_U,
    HARTREE_IN_EV,
    MUON_ANOMALY,
    MUON_ELECTRON_MASS_RATIO,
    PROTON_ELECTRON_MASS_RATIO,
    PROTON_MAGNETIC_MOMENT_RATIO,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpeciesParams:
    """
    One hydrogenlike coboson species in atomic units.

    Attributes:
        m_e: Electron (negative constituent) mass.
        m_n: Nucleus (positive constituent) mass.
        Z: Nuclear charge number.
        name: Label used in manifests and tables.
        a_e: Anomalous magnetic moment of the electron.
        a_n: Anomalous magnetic moment of the nucleus, so that g_n/2 = 1 + a_n/Z.
    """
    m_e: float
    m_n: float
    Z: int
    name: str = "custom"
    a_e: float = 0.0
    a_n: float = 0.0

    @property
    def q_e(self) -> float:
        return -1.0

    @property
    def q_n(self) -> float:
        return float(self.Z)

    @property
    def M(self) -> float:
        return self.m_e + self.m_n

    @property
    def m_r(self) -> float:
        return self.m_e * self.m_n / (self.m_e + self.m_n)

    @property
    def delta_m(self) -> float:
        return self.m_n - self.m_e

    @property
    def Q(self) -> float:
        """Total charge q_n + q_e in units of e."""
        return float(self.Z - 1)

    @property
    def a_Z(self) -> float:
        """Reduced Bohr length 1/(Z m_r)."""
        return 1.0 / (self.Z * self.m_r)

    @property
    def nuclear_spin(self) -> float:
        return 0.5

    def mass(self, constituent: str) -> float:
        return self.m_n if constituent == "n" else self.m_e

    def charge(self, constituent: str) -> float:
        return self.q_n if constituent == "n" else self.q_e


def make_species(
    m_e: float,
    m_n: float,
    Z: int,
    *,
    name: str = "custom",
    a_e: float = 0.0,
    a_n: float = 0.0,
) -> SpeciesParams:
    """
    Build a species from constituent masses and the nuclear charge number.

    Raises:
        DomainError: If a mass is not positive, Z is not an integer or Z < 1.
    """
    if not (m_e > 0 and m_n > 0):
        raise DomainError(f"Constituent masses must be positive (m_e={m_e}, m_n={m_n}).")
    if isinstance(Z, bool) or int(Z) != Z:
        raise DomainError(f"Nuclear charge number must be an integer, got {Z!r}.")
    if Z < 1:
        raise DomainError(f"Nuclear charge number must be >= 1, got {Z}.")
    return SpeciesParams(m_e=float(m_e), m_n=float(m_n), Z=int(Z), name=name, a_e=float(a_e), a_n=float(a_n))


def _hydrogen() -> SpeciesParams:
    return make_species(
        1.0,
        PROTON_ELECTRON_MASS_RATIO,
        1,
        name="hydrogen",
        a_e=ELECTRON_ANOMALY,
        a_n=PROTON_MAGNETIC_MOMENT_RATIO - 1.0,
    )


def _helium_ion() -> SpeciesParams:
    # The alpha particle is spinless; a_n = 0 keeps the nuclear spin terms formal.
    return make_species(1.0, ALPHA_PARTICLE_ELECTRON_MASS_RATIO, 2, name="helium-ion", a_e=ELECTRON_ANOMALY)


def _positronium() -> SpeciesParams:
    return make_species(1.0, 1.0, 1, name="positronium", a_e=ELECTRON_ANOMALY, a_n=ELECTRON_ANOMALY)


def _muonium() -> SpeciesParams:
    return make_species(1.0, MUON_ELECTRON_MASS_RATIO, 1, name="muonium", a_e=ELECTRON_ANOMALY, a_n=MUON_ANOMALY)


SPECIES_PRESETS: Dict[str, Callable[[], SpeciesParams]] = {
    "hydrogen": _hydrogen,
    "helium-ion": _helium_ion,
    "positronium": _positronium,
    "muonium": _muonium,
}

_PRESET_ALIASES = {
    "h": "hydrogen",
    "he+": "helium-ion",
    "heplus": "helium-ion",
    "ps": "positronium",
    "mu": "muonium",
}


def species_preset(name: str) -> SpeciesParams:
    """
    Return a named species preset.

    Raises:
        DomainError: If the preset name is unknown.
    """
    key = name.strip().lower()
    key = _PRESET_ALIASES.get(key, key)
    factory = SPECIES_PRESETS.get(key)
    if factory is None:
        allowed = ", ".join(sorted(SPECIES_PRESETS))
        raise DomainError(f"Unknown species preset '{name}'. Allowed: {allowed}.")
    return factory()


@dataclass(frozen=True)
class ClockPreset:
    """
    A clock transition given by measured data rather than hydrogenlike levels.

    Attributes:
        name: Preset name.
        mass: Total mass in electron masses.
        transition_energy: hbar Omega in Hartree.
    """
    name: str
    mass: float
    transition_energy: float


CLOCK_PRESETS: Dict[str, ClockPreset] = {
    "strontium88": ClockPreset(
        name="strontium88",
        mass=87.9056125 / ELECTRON_MASS_IN_U,
        transition_energy=1.78 / HARTREE_IN_EV,
    ),
}


def clock_preset_data(name: str) -> ClockPreset:
    key = name.strip().lower().replace("-", "")
    if key in {"sr88", "sr"}:
        key = "strontium88"
    preset = CLOCK_PRESETS.get(key)
    if preset is None:
        allowed = ", ".join(sorted(CLOCK_PRESETS))
        raise DomainError(f"Unknown clock preset '{name}'. Allowed: {allowed}.")
    return preset
