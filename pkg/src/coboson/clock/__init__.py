"""
Mass-defect dispersion and two-level clock physics.
"""

from .dispersion import dispersion, dispersion_minus_rest, dispersion_turnover, p4_correction, p4_relative_size
from .doppler import DopplerSample, doppler_shift, doppler_shift_thermal, doppler_sweep, thermal_momentum_sq
from .packet import GaussianPacket, PacketPairSample, packet_evolve, packet_pair
from .reduction import (
    ClockParams,
    clock_from_energies,
    clock_preset,
    equivalence_residual,
    kinetic_forms,
    p4_mass_residual,
    reduce_to_clock,
)

__all__ = [
    "ClockParams",
    "DopplerSample",
    "GaussianPacket",
    "PacketPairSample",
    "clock_from_energies",
    "clock_preset",
    "dispersion",
    "dispersion_minus_rest",
    "dispersion_turnover",
    "doppler_shift",
    "doppler_shift_thermal",
    "doppler_sweep",
    "equivalence_residual",
    "kinetic_forms",
    "p4_correction",
    "p4_mass_residual",
    "p4_relative_size",
    "packet_evolve",
    "packet_pair",
    "reduce_to_clock",
    "thermal_momentum_sq",
]
