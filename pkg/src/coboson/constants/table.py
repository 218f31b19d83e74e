"""
Pinned CODATA-2018 constants and the Hartree atomic unit system.

Every quantity inside the library is expressed in Hartree atomic units
(hbar = m_e = e = 4 pi eps0 = 1); SI values are only used at the I/O boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Any, Dict

from ..errors import DomainError

CONSTANTS_VERSION = "CODATA-2018"

# CODATA-2018 recommended values.
FINE_STRUCTURE = 7.2973525693e-3
INVERSE_FINE_STRUCTURE = 137.035999084
SPEED_OF_LIGHT_SI = 299792458.0  # m s^-1, exact
HBAR_SI = 1.054571817e-34  # J s
ELECTRON_MASS_SI = 9.1093837015e-31  # kg
VACUUM_PERMITTIVITY_SI = 8.8541878128e-12  # F m^-1
HARTREE_IN_EV = 27.211386245988
HARTREE_IN_J = 4.3597447222071e-18
HARTREE_IN_HZ = 6.579683920502e15
HARTREE_IN_K = 3.1577502480407e5
HARTREE_IN_WAVENUMBER = 2.1947463136320e5  # cm^-1
BOHR_IN_M = 5.29177210903e-11
AU_TIME_IN_S = 2.4188843265857e-17
AU_VELOCITY_IN_M_PER_S = 2.18769126364e6
ELECTRON_MASS_IN_U = 5.48579909065e-4
ELECTRON_MASS_IN_MEV = 0.51099895000

PROTON_ELECTRON_MASS_RATIO = 1836.15267343
ALPHA_PARTICLE_ELECTRON_MASS_RATIO = 7294.29954142
MUON_ELECTRON_MASS_RATIO = 206.7682830
ELECTRON_ANOMALY = 1.15965218128e-3
MUON_ANOMALY = 1.16592089e-3
PROTON_MAGNETIC_MOMENT_RATIO = 2.79284734463  # mu_p / mu_N = g_p / 2


@dataclass(frozen=True)
class PhysicalConstants:
    """
    Constants of the Hartree atomic unit system.

    Attributes:
        c: Speed of light in atomic units (1/alpha unless rescaled).
        hbar: Reduced Planck constant (1 in atomic units).
        eps0: Vacuum permittivity (1/(4 pi) in atomic units).
        electron_mass_si: Electron mass in kg.
        hartree_in_ev: Hartree energy in eV.
        version: Identifier of the pinned constants table.
    """
    c: float = INVERSE_FINE_STRUCTURE
    hbar: float = 1.0
    eps0: float = 1.0 / (4.0 * math.pi)
    electron_mass_si: float = ELECTRON_MASS_SI
    hartree_in_ev: float = HARTREE_IN_EV
    hartree_in_j: float = HARTREE_IN_J
    hartree_in_hz: float = HARTREE_IN_HZ
    bohr_in_m: float = BOHR_IN_M
    au_time_in_s: float = AU_TIME_IN_S
    au_velocity_in_m_per_s: float = AU_VELOCITY_IN_M_PER_S
    version: str = CONSTANTS_VERSION

    @property
    def alpha(self) -> float:
        """Fine-structure constant, tied to c through alpha = 1/c."""
        return 1.0 / self.c

    @property
    def mu0(self) -> float:
        """Vacuum permeability 1/(eps0 c^2)."""
        return 1.0 / (self.eps0 * self.c**2)

    @property
    def c_scale(self) -> float:
        return self.c / INVERSE_FINE_STRUCTURE

    def with_c_scale(self, scale: float) -> "PhysicalConstants":
        """
        Return a copy with c multiplied by `scale`.

        Used to check the c^-2 and c^-4 scaling of relativistic corrections while
        masses and charges stay fixed.
        """
        if not scale > 0:
            raise DomainError(f"c scale must be positive, got {scale}")
        return replace(self, c=self.c * scale)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "version": self.version,
            "alpha": self.alpha,
            "c": self.c,
            "hbar": self.hbar,
            "eps0": self.eps0,
            "mu0": self.mu0,
            "electron_mass_si": self.electron_mass_si,
            "hartree_in_ev": self.hartree_in_ev,
            "hartree_in_j": self.hartree_in_j,
            "hartree_in_hz": self.hartree_in_hz,
            "bohr_in_m": self.bohr_in_m,
            "au_time_in_s": self.au_time_in_s,
            "au_velocity_in_m_per_s": self.au_velocity_in_m_per_s,
        }


ATOMIC = PhysicalConstants()


def dump_constants(constants: PhysicalConstants = ATOMIC) -> Dict[str, Any]:
    """
    Return the pinned constants table as a JSON-ready mapping.

    Includes the mass ratios and anomalous moments used by the species presets so that
    test fixtures can be pinned against one file.
    """
    payload = constants.as_dict()
    payload["mass_ratios"] = {
        "proton_electron": PROTON_ELECTRON_MASS_RATIO,
        "alpha_particle_electron": ALPHA_PARTICLE_ELECTRON_MASS_RATIO,
        "muon_electron": MUON_ELECTRON_MASS_RATIO,
        "electron_mass_in_u": ELECTRON_MASS_IN_U,
    }
    payload["anomalous_moments"] = {
        "electron": ELECTRON_ANOMALY,
        "muon": MUON_ANOMALY,
        "proton": PROTON_MAGNETIC_MOMENT_RATIO - 1.0,
    }
    return payload
