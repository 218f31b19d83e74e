"""
Coboson-coboson interaction energies at classical configurations.

Component rows follow the two-fermion table (Coulomb with its mass-asymmetry correction,
orbit-orbit with retardation, spin-orbit, spin-spin), summed over the constituent pairs
(i, j) in {n, e}^2. The rows as tabulated carry 1/(8 pi eps0); the pair energy entering
the equation of motion is twice that. Functions return the physical (doubled) value
unless `raw=True`.

Momentum-dependent rows are evaluated with plain products of classical vectors, so
operator-ordering symmetrizations collapse.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from ..constants import ATOMIC, PhysicalConstants, SpeciesParams
from ..errors import DomainError, SingularGeometryError
from ..spectrum import WilsonCoefficients
from .geometry import CONSTITUENTS, CobosonConfig, PairGeometry, as_vector, unit_vector

logger = logging.getLogger(__name__)

# Below this |r_k| (bohr) the unit vector e_{r_k} in the Coulomb-row correction is undefined.
UNIT_VECTOR_THRESHOLD = 1e-12
RAW_TO_PHYSICAL = 2.0


@dataclass(frozen=True)
class ScatteringComponents:
    """
    Summed component energies of one two-coboson configuration.

    Attributes:
        flags: Diagnostics such as undefined unit vectors in the Coulomb-row correction.
        raw: True when the values are the tabulated rows (half the physical energy).
    """
    C: float
    LL: float
    LS: float
    SS: float
    total: float
    flags: Tuple[str, ...] = ()
    raw: bool = False

    def as_dict(self) -> Dict[str, object]:
        return asdict(self)


@dataclass(frozen=True)
class ScanRow:
    DeltaR: float
    theta: float
    V_C: float
    V_LL: float
    V_LS: float
    V_SS: float
    V_sum: float
    V_multipole: float


def _coulomb_factor(constants: PhysicalConstants) -> float:
    return 1.0 / (4.0 * math.pi * constants.eps0)


def _pair_label(pair: Tuple[str, str]) -> str:
    return f"{pair[0]}1-{pair[1]}2"


def _checked_distance(geometry: PairGeometry, pair: Tuple[str, str]) -> float:
    distance = geometry.distance(pair)
    if distance == 0.0:
        raise SingularGeometryError("Constituents coincide", _pair_label(pair))
    return distance


def coulomb_sum(
    species: SpeciesParams,
    cfg1: CobosonConfig,
    cfg2: CobosonConfig,
    constants: PhysicalConstants = ATOMIC,
) -> float:
    """
    Exact constituent Coulomb energy sum_{i,j} q_i q_j / (4 pi eps0 |chi_ij|).

    Raises:
        SingularGeometryError: If two constituents coincide.
    """
    geometry = PairGeometry.from_configs(species, cfg1, cfg2)
    total = 0.0
    for pair in geometry.pairs():
        distance = _checked_distance(geometry, pair)
        total += species.charge(pair[0]) * species.charge(pair[1]) / distance
    return _coulomb_factor(constants) * total


def dipole_moment(species: SpeciesParams, r: np.ndarray) -> np.ndarray:
    """d = m_r (q_e/m_e - q_n/m_n) r."""
    return species.m_r * (species.q_e / species.m_e - species.q_n / species.m_n) * as_vector(r, "r")


def quadrupole_tensor(species: SpeciesParams, r: np.ndarray) -> np.ndarray:
    """Q_uv = -r_u r_v m_r^2 (q_e/m_e^2 + q_n/m_n^2)/2."""
    r = as_vector(r, "r")
    return -np.outer(r, r) * species.m_r**2 * (species.q_e / species.m_e**2 + species.q_n / species.m_n**2) / 2.0


def multipole_terms(
    d1: np.ndarray,
    d2: np.ndarray,
    Q1_tensor: np.ndarray,
    Q2_tensor: np.ndarray,
    Q: float,
    DeltaR: np.ndarray,
    constants: PhysicalConstants = ATOMIC,
) -> Dict[str, float]:
    """
    Physical monopole, monopole-dipole, monopole-quadrupole and dipole-dipole energies.

    DeltaR = R_1 - R_2. The monopole-dipole sign is that of the exact expansion of
    sum q_i q_j/|chi_ij|, i.e. -Q e.(d1 - d2)/|DeltaR|^2.

    Raises:
        SingularGeometryError: If |DeltaR| = 0.
    """
    DeltaR = as_vector(DeltaR, "DeltaR")
    distance = float(np.linalg.norm(DeltaR))
    if distance == 0.0:
        raise SingularGeometryError("Multipole expansion needs |DeltaR| > 0", "c.m.")
    e = DeltaR / distance
    d1 = as_vector(d1, "d1")
    d2 = as_vector(d2, "d2")
    quad = np.asarray(Q1_tensor, dtype=float) + np.asarray(Q2_tensor, dtype=float)
    factor = _coulomb_factor(constants)
    return {
        "monopole": factor * Q * Q / distance,
        "monopole_dipole": -factor * Q * float(e @ (d1 - d2)) / distance**2,
        "monopole_quadrupole": factor * Q * (float(np.trace(quad)) - 3.0 * float(e @ quad @ e)) / distance**3,
        "dipole_dipole": factor * (float(d1 @ d2) - 3.0 * float(e @ d1) * float(e @ d2)) / distance**3,
    }


def multipole_potential(
    species: SpeciesParams,
    d1: np.ndarray,
    d2: np.ndarray,
    Q1_tensor: np.ndarray,
    Q2_tensor: np.ndarray,
    Q: Optional[float],
    DeltaR: np.ndarray,
    constants: PhysicalConstants = ATOMIC,
) -> float:
    """Sum of `multipole_terms`; Q defaults to the species charge Z - 1 when None."""
    charge = species.Q if Q is None else Q
    return sum(multipole_terms(d1, d2, Q1_tensor, Q2_tensor, charge, DeltaR, constants).values())


def check_multipole_validity(DeltaR: np.ndarray, r1: np.ndarray, r2: np.ndarray) -> bool:
    """Warn when |DeltaR| < 2(|r1| + |r2|); returns whether the expansion is trusted."""
    distance = float(np.linalg.norm(DeltaR))
    extent = float(np.linalg.norm(r1) + np.linalg.norm(r2))
    if distance < 2.0 * extent:
        logger.warning(
            "Multipole expansion outside its range: |DeltaR|=%.6g < 2(|r1|+|r2|)=%.6g", distance, 2.0 * extent
        )
        return False
    return True


def multipole_from_configs(
    species: SpeciesParams,
    cfg1: CobosonConfig,
    cfg2: CobosonConfig,
    constants: PhysicalConstants = ATOMIC,
) -> float:
    delta_R = cfg1.R - cfg2.R
    check_multipole_validity(delta_R, cfg1.r, cfg2.r)
    return multipole_potential(
        species,
        dipole_moment(species, cfg1.r),
        dipole_moment(species, cfg2.r),
        quadrupole_tensor(species, cfg1.r),
        quadrupole_tensor(species, cfg2.r),
        species.Q,
        delta_R,
        constants,
    )


def dd_angular(Z: int, a: float, DeltaR_mag: float, theta: float) -> float:
    """
    (Z-1)^2/|DeltaR| + Z a^2 (1 - 3 cos^2 theta)/|DeltaR|^3 for r = r' = a e_r.

    Raises:
        DomainError: If DeltaR_mag <= 0.
    """
    if not DeltaR_mag > 0:
        raise DomainError(f"|DeltaR| must be positive, got {DeltaR_mag}")
    cos_sq = math.cos(theta) ** 2
    return (Z - 1) ** 2 / DeltaR_mag + Z * a * a * (1.0 - 3.0 * cos_sq) / DeltaR_mag**3


def magnetic_moment(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    constituent: str,
    spin: np.ndarray,
) -> np.ndarray:
    """mu = cF q s / m for one constituent."""
    cF = wilson.cF_n if constituent == "n" else wilson.cF_e
    return cF * species.charge(constituent) * spin / species.mass(constituent)


def potential_components(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    cfg1: CobosonConfig,
    cfg2: CobosonConfig,
    *,
    raw: bool = False,
    constants: PhysicalConstants = ATOMIC,
) -> ScatteringComponents:
    """
    Evaluate the C, LL, LS and SS rows for two classical cobosons.

    The Coulomb-row correction term needs e_{r_1} and e_{r_2}; when either |r_k| is
    below UNIT_VECTOR_THRESHOLD that term is set to 0 and a flag is recorded.

    Raises:
        SingularGeometryError: If two constituents coincide.
    """
    geometry = PairGeometry.from_configs(species, cfg1, cfg2)
    c2 = constants.c**2
    M = species.M
    half_mu0 = constants.mu0 / (8.0 * math.pi)
    coulomb = 1.0 / (8.0 * math.pi * constants.eps0)
    q_e, q_n = species.q_e, species.q_n

    flags: List[str] = []
    e_r1 = unit_vector(cfg1.r, UNIT_VECTOR_THRESHOLD)
    e_r2 = unit_vector(cfg2.r, UNIT_VECTOR_THRESHOLD)
    if e_r1 is None:
        flags.append("undefined unit vector e_r1")
    if e_r2 is None:
        flags.append("undefined unit vector e_r2")
    correction_defined = e_r1 is not None and e_r2 is not None
    if not correction_defined:
        logger.warning("Coulomb-row correction set to 0: %s", "; ".join(flags))

    C = LL = LS = SS = 0.0
    for pair in geometry.pairs():
        i, j = pair
        distance = _checked_distance(geometry, pair)
        chi = geometry.chi[pair]
        e_chi = chi / distance
        q_i, q_j = species.charge(i), species.charge(j)
        m_i, m_j = species.mass(i), species.mass(j)

        base = coulomb * q_i * q_j / distance
        C += base
        if correction_defined:
            C += (
                (species.delta_m / M)
                * float(e_chi @ (e_r1 - e_r2))
                / (M * c2)
                * (q_e * q_n / (q_i * q_j))
                * base**2
            )

        L1 = np.cross(chi, cfg1.P)
        L2 = np.cross(chi, cfg2.P)
        inv_cube = 1.0 / distance**3
        LL -= half_mu0 * q_i * q_j / M**2 * inv_cube * (
            0.5 * float(L1 @ L2) + float(chi @ cfg1.P) * float(chi @ cfg2.P)
        )

        s1 = cfg1.spin(i)
        s2 = cfg2.spin(j)
        mu1 = magnetic_moment(species, wilson, i, s1)
        mu2 = magnetic_moment(species, wilson, j, s2)
        LS -= half_mu0 * inv_cube * (
            (q_i / M) * float((L1 - L2) @ ((q_j / q_i) * mu1 + mu2))
            - 0.5 * q_j * q_i / (M * m_i) * float(L1 @ s1)
            + 0.5 * q_i * q_j / (M * m_j) * float(L2 @ s2)
        )
        SS -= half_mu0 * inv_cube * (float(mu1 @ mu2) - 3.0 * float(mu1 @ e_chi) * float(mu2 @ e_chi))

    scale = 1.0 if raw else RAW_TO_PHYSICAL
    C, LL, LS, SS = (scale * value for value in (C, LL, LS, SS))
    return ScatteringComponents(C=C, LL=LL, LS=LS, SS=SS, total=C + LL + LS + SS, flags=tuple(flags), raw=raw)


def separation_vector(DeltaR: float, theta: float) -> np.ndarray:
    """DeltaR (sin theta, 0, cos theta): polar angle theta measured from the z axis."""
    return DeltaR * np.array([math.sin(theta), 0.0, math.cos(theta)])


def scan_geometry(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    cfg1: CobosonConfig,
    cfg2: CobosonConfig,
    separations: Iterable[float],
    angles: Iterable[float],
    *,
    constants: PhysicalConstants = ATOMIC,
    threads: int = 1,
) -> List[ScanRow]:
    """
    Sweep |DeltaR| and theta with the internal vectors of cfg1 and cfg2 held fixed.

    Coboson 2 sits at the origin and coboson 1 at `separation_vector(DeltaR, theta)`,
    so with r along z theta is the angle between r and DeltaR. Rows come back in
    (DeltaR, theta) order.
    """
    grid = [(float(R), float(theta)) for R in separations for theta in angles]
    origin = np.zeros(3)

    def evaluate(point: Tuple[float, float]) -> ScanRow:
        R, theta = point
        first = cfg1.moved_to(separation_vector(R, theta))
        second = cfg2.moved_to(origin)
        components = potential_components(species, wilson, first, second, constants=constants)
        return ScanRow(
            DeltaR=R,
            theta=theta,
            V_C=components.C,
            V_LL=components.LL,
            V_LS=components.LS,
            V_SS=components.SS,
            V_sum=components.total,
            V_multipole=multipole_from_configs(species, first, second, constants),
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(evaluate, grid))
    return [evaluate(point) for point in grid]
