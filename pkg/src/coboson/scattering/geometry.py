"""
Classical phase-space and spin configurations of one or two cobosons.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, Tuple

import numpy as np

from ..constants import SpeciesParams
from ..errors import DomainError

CONSTITUENTS: Tuple[str, str] = ("n", "e")


def as_vector(value: object, name: str = "vector") -> np.ndarray:
    array = np.asarray(value, dtype=float)
    if array.shape != (3,):
        raise DomainError(f"{name} must be a 3-vector, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise DomainError(f"{name} must be finite, got {array.tolist()}")
    return array


def unit_vector(vector: np.ndarray, threshold: float = 0.0) -> np.ndarray | None:
    """vector/|vector|, or None when |vector| <= threshold."""
    norm = float(np.linalg.norm(vector))
    if norm <= threshold:
        return None
    return vector / norm


@dataclass(frozen=True)
class CobosonConfig:
    """
    One coboson at a classical phase-space point.

    Attributes:
        R: c.m. position.
        r: Relative position x_e - x_n.
        P: c.m. momentum.
        spin_n: Classical nucleus spin vector.
        spin_e: Classical electron spin vector.
    """
    R: np.ndarray
    r: np.ndarray
    P: np.ndarray = field(default_factory=lambda: np.zeros(3))
    spin_n: np.ndarray = field(default_factory=lambda: np.zeros(3))
    spin_e: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self) -> None:
        for name in ("R", "r", "P", "spin_n", "spin_e"):
            object.__setattr__(self, name, as_vector(getattr(self, name), name))

    def constituent_positions(self, species: SpeciesParams) -> Tuple[np.ndarray, np.ndarray]:
        """(x_n, x_e) = (R - (m_r/m_n) r, R + (m_r/m_e) r)."""
        x_n = self.R - (species.m_r / species.m_n) * self.r
        x_e = self.R + (species.m_r / species.m_e) * self.r
        return x_n, x_e

    def spin(self, constituent: str) -> np.ndarray:
        return self.spin_n if constituent == "n" else self.spin_e

    def rotated(self, rotation: np.ndarray) -> "CobosonConfig":
        """Apply a proper rotation to every vector (spins transform like the others)."""
        rotation = np.asarray(rotation, dtype=float)
        return CobosonConfig(
            R=rotation @ self.R,
            r=rotation @ self.r,
            P=rotation @ self.P,
            spin_n=rotation @ self.spin_n,
            spin_e=rotation @ self.spin_e,
        )

    def moved_to(self, R: np.ndarray) -> "CobosonConfig":
        return CobosonConfig(R=R, r=self.r, P=self.P, spin_n=self.spin_n, spin_e=self.spin_e)


@dataclass(frozen=True)
class PairGeometry:
    """
    Separations between the constituents of two cobosons.

    `chi[(i, j)]` is x_{1,i} - x_{2,j} for i, j in ("n", "e").
    """
    delta_R: np.ndarray
    chi: Dict[Tuple[str, str], np.ndarray]

    @classmethod
    def from_configs(cls, species: SpeciesParams, cfg1: CobosonConfig, cfg2: CobosonConfig) -> "PairGeometry":
        first = dict(zip(CONSTITUENTS, cfg1.constituent_positions(species)))
        second = dict(zip(CONSTITUENTS, cfg2.constituent_positions(species)))
        chi = {(i, j): first[i] - second[j] for i in CONSTITUENTS for j in CONSTITUENTS}
        return cls(delta_R=cfg1.R - cfg2.R, chi=chi)

    def pairs(self) -> Iterator[Tuple[str, str]]:
        return iter(self.chi)

    def distance(self, pair: Tuple[str, str]) -> float:
        return float(np.linalg.norm(self.chi[pair]))

    def unit(self, pair: Tuple[str, str]) -> np.ndarray | None:
        return unit_vector(self.chi[pair])
