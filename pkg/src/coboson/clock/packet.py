"""
Free Gaussian wave packets with a state-dependent mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, List, Tuple

from ..constants import ATOMIC, PhysicalConstants
from ..errors import DomainError
from .reduction import ClockParams


@dataclass(frozen=True)
class GaussianPacket:
    """
    Minimum-uncertainty packet |psi|^2 ~ exp(-(x - center)^2 / (2 width^2)).

    Attributes:
        mass: State-dependent mass M_g or M_e.
        x0: Initial center.
        sigma0: Initial position width.
        P0: Mean momentum.
        t: Elapsed time.
    """
    mass: float
    x0: float
    sigma0: float
    P0: float
    t: float = 0.0

    def __post_init__(self) -> None:
        if not self.sigma0 > 0:
            raise DomainError(f"sigma0 must be positive, got {self.sigma0}")
        if not self.mass > 0:
            raise DomainError(f"mass must be positive, got {self.mass}")

    @property
    def velocity(self) -> float:
        return self.P0 / self.mass

    def at(self, t: float) -> "GaussianPacket":
        return replace(self, t=t)


@dataclass(frozen=True)
class PacketPairSample:
    t: float
    center_g: float
    width_g: float
    center_e: float
    width_e: float


def packet_evolve(packet: GaussianPacket, constants: PhysicalConstants = ATOMIC) -> Tuple[float, float]:
    """(center, width) at packet.t: x0 + (P0/m) t and sigma0 sqrt(1 + (hbar t/(2 m sigma0^2))^2)."""
    spread = constants.hbar * packet.t / (2.0 * packet.mass * packet.sigma0**2)
    center = packet.x0 + packet.velocity * packet.t
    width = packet.sigma0 * math.sqrt(1.0 + spread * spread)
    return center, width


def packet_pair(
    clock: ClockParams,
    x0: float,
    sigma0: float,
    P0: float,
    times: Iterable[float],
    constants: PhysicalConstants = ATOMIC,
) -> List[PacketPairSample]:
    """Ground and excited packets with equal P0 and sigma0, sampled at `times`."""
    ground = GaussianPacket(mass=clock.M_g, x0=x0, sigma0=sigma0, P0=P0)
    excited = GaussianPacket(mass=clock.M_e, x0=x0, sigma0=sigma0, P0=P0)
    samples = []
    for t in times:
        center_g, width_g = packet_evolve(ground.at(float(t)), constants)
        center_e, width_e = packet_evolve(excited.at(float(t)), constants)
        samples.append(
            PacketPairSample(t=float(t), center_g=center_g, width_g=width_g, center_e=center_e, width_e=width_e)
        )
    return samples
