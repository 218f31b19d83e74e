"""
High-energy Wilson coefficients and their low-energy combinations.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Optional

from ..constants import ATOMIC, PhysicalConstants, SpeciesParams
from ..errors import DomainError


@dataclass(frozen=True)
class WilsonCoefficients:
    """
    Dimensionless coefficients of the effective two-fermion theory.

    The `_e` and `_n` suffixes refer to the electron and the nucleus; d-type
    coefficients carry the ordered fermion pair. cW1 and cA1 only enter
    magnetic-field couplings and are carried along unused by the energies.
    """
    cF_e: float = 1.0
    cF_n: float = 1.0
    cD_e: float = 1.0
    cD_n: float = 1.0
    cS_e: float = 1.0
    cS_n: float = 1.0
    cW1_e: float = 1.0
    cW1_n: float = 1.0
    cA1_e: float = 1.0
    cA1_n: float = 1.0
    d1_en: float = 0.0
    d1_ne: float = 0.0
    d2_en: float = 0.0
    d2_ne: float = 0.0
    name: str = "custom"

    def with_overrides(self, **overrides: Any) -> "WilsonCoefficients":
        unknown = set(overrides) - set(self.as_dict())
        if unknown:
            raise DomainError(f"Unknown Wilson coefficient(s): {', '.join(sorted(unknown))}")
        return replace(self, **overrides)

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class AlphaCoefficients:
    """Low-energy combinations entering the internal Hamiltonian."""
    alpha_D: float
    alpha_lS: float
    alpha_ls: float
    alpha_ss: float

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)


def bare() -> WilsonCoefficients:
    """Every c-type coefficient 1, every d-type coefficient 0."""
    return WilsonCoefficients(name="bare")


def tree_level(species: SpeciesParams) -> WilsonCoefficients:
    """
    Tree-level set with anomalous magnetic moments: cF_i = 1 + a_i/Z_i.

    The electron has Z_e = 1 and the nucleus Z_n = Z; all other coefficients
    stay at 1 and the contact coefficients at 0.
    """
    return WilsonCoefficients(
        cF_e=1.0 + species.a_e,
        cF_n=1.0 + species.a_n / species.Z,
        name="tree",
    )


WILSON_PRESETS = ("tree", "bare")


def wilson_preset(name: str, species: SpeciesParams) -> WilsonCoefficients:
    """Resolve a named coefficient set for `species`."""
    key = name.strip().lower()
    if key in {"tree", "tree-level", "tree_level"}:
        return tree_level(species)
    if key == "bare":
        return bare()
    raise DomainError(f"Unknown Wilson preset '{name}'. Allowed: {', '.join(WILSON_PRESETS)}.")


def alpha_coefficients(
    wilson: WilsonCoefficients,
    species: SpeciesParams,
    constants: PhysicalConstants = ATOMIC,
) -> AlphaCoefficients:
    """
    Combine the high-energy coefficients into alpha_D, alpha_lS, alpha_ls and alpha_ss.

    Args:
        wilson: High-energy coefficient set.
        species: Species supplying the constituent masses and Z.
        constants: Constants providing alpha (= 1/c).

    Returns:
        The four low-energy coefficients.
    """
    m_e, m_n, M, m_r = species.m_e, species.m_n, species.M, species.m_r
    z_alpha = species.Z * constants.alpha
    alpha_D = (m_n**2 * wilson.cD_e + m_e**2 * wilson.cD_n) / (2.0 * m_r * M) + (
        wilson.d1_en + wilson.d1_ne
    ) / (math.pi * z_alpha)
    alpha_lS = (m_e * wilson.cF_e + m_n * wilson.cF_n) / M + (m_e * wilson.cS_n + m_n * wilson.cS_e) / (2.0 * M)
    alpha_ls = wilson.cF_e - wilson.cF_n + (wilson.cS_e * m_n**2 - wilson.cS_n * m_e**2) / (2.0 * m_r * M)
    alpha_ss = 8.0 / 3.0 * wilson.cF_n * wilson.cF_e - 4.0 * (wilson.d2_en + wilson.d2_ne) / (math.pi * z_alpha)
    return AlphaCoefficients(alpha_D=alpha_D, alpha_lS=alpha_lS, alpha_ls=alpha_ls, alpha_ss=alpha_ss)


def c_jl(
    wilson: WilsonCoefficients,
    species: SpeciesParams,
    j: int,
    ell: int,
    constants: PhysicalConstants = ATOMIC,
    *,
    alphas: Optional[AlphaCoefficients] = None,
) -> float:
    """
    Spin-structure factor of a triplet level, combining both spin-orbit terms and the tensor term.

    Raises:
        DomainError: For ell = 0 or a j outside {ell-1, ell, ell+1}.
    """
    if ell < 1:
        raise DomainError(f"c_jl is defined for ell >= 1 only, got ell={ell}")
    if alphas is None:
        alphas = alpha_coefficients(wilson, species, constants)
    x = alphas.alpha_lS + species.delta_m / (2.0 * species.M) * alphas.alpha_ls
    cf = wilson.cF_e * wilson.cF_n
    if j == ell + 1:
        return ell / (2 * ell + 3) * (2 * (2 * ell + 3) * x - cf)
    if j == ell:
        return -2.0 * x + cf
    if j == ell - 1:
        return -(ell + 1) / (2 * ell - 1) * (2 * (2 * ell - 1) * x + cf)
    raise DomainError(f"j={j} is not a triplet partner of ell={ell}")
