"""
Row builders that turn numerics results into the columns of the CLI data files.
"""

from __future__ import annotations

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .clock import DopplerSample, PacketPairSample
from .constants import ATOMIC, PhysicalConstants, SpeciesParams
from .gpe import GpeObservables, GpeProblem, GpeState
from .scattering import ScanRow, dd_angular
from .spectrum import (
    DispersionSample,
    EnergyLevel,
    QuantumNumbers,
    WilsonCoefficients,
    energy1,
    enumerate_states,
    validate,
)
from .wavefunctions import energy1_oracle

logger = logging.getLogger(__name__)

LEVEL_COLUMNS = ("n", "ell", "S", "j", "m_j", "E0_hartree", "E1_hartree", "M_alpha_rel_shift")
DISPERSION_COLUMNS = ("n", "ell", "S", "j", "P", "energy_minus_rest_hartree")
ORACLE_COLUMNS = ("n", "ell", "S", "j", "m_j", "E1_closed_hartree", "E1_oracle_hartree", "relative_difference")
DOPPLER_COLUMNS = ("v", "Omega_shifted", "relative_shift")
PACKET_COLUMNS = ("t", "center_g", "width_g", "center_e", "width_e")
SCAN_COLUMNS = ("DeltaR", "theta", "V_C", "V_LL", "V_LS", "V_SS", "V_sum", "V_multipole")
ANGULAR_COLUMNS = ("DeltaR", "theta", "V")


def level_rows(levels: Iterable[EnergyLevel]) -> List[List[Any]]:
    return [[*level.beta.as_tuple(), level.E0, level.E1, level.rel_mass_shift] for level in levels]


def level_records(levels: Iterable[EnergyLevel]) -> List[Dict[str, Any]]:
    return [dict(zip(LEVEL_COLUMNS, row)) for row in level_rows(levels)]


def dispersion_rows(samples: Iterable[DispersionSample]) -> List[List[Any]]:
    return [[s.n, s.ell, s.S, s.j, s.P, s.energy_minus_rest] for s in samples]


def relative_difference(value: float, reference: float) -> float:
    scale = abs(reference)
    return abs(value - reference) / scale if scale > 0.0 else abs(value - reference)


def oracle_payload(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    beta: QuantumNumbers,
    constants: PhysicalConstants = ATOMIC,
) -> Dict[str, Any]:
    """Per-term oracle breakdown next to the closed-form shift of one state."""
    validate(beta)
    report = energy1_oracle(species, wilson, beta, constants)
    closed = energy1(species, wilson, beta, constants)
    diagnostics = {key: value for key, value in report.as_dict().items() if key not in report.terms()}
    return {
        "beta": dict(zip(("n", "ell", "S", "j", "m_j"), beta.as_tuple())),
        "label": beta.label,
        "species": species.name,
        "coefficient_set": wilson.name,
        "terms": report.terms(),
        "diagnostics": diagnostics,
        "closed_form": closed,
        "relative_difference": relative_difference(closed, report.total),
    }


def oracle_rows(
    species: SpeciesParams,
    wilson: WilsonCoefficients,
    n_max: int,
    constants: PhysicalConstants = ATOMIC,
    *,
    threads: int = 1,
) -> List[List[Any]]:
    """Closed form against quadrature for every state up to n_max, in enumeration order."""
    states = list(enumerate_states(n_max))

    def compare(beta: QuantumNumbers) -> List[Any]:
        oracle = energy1_oracle(species, wilson, beta, constants).total
        closed = energy1(species, wilson, beta, constants)
        return [*beta.as_tuple(), closed, oracle, relative_difference(closed, oracle)]

    logger.info("Comparing %d states against the quadrature oracle", len(states))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(compare, states))
    return [compare(beta) for beta in states]


def doppler_rows(samples: Iterable[DopplerSample]) -> List[List[Any]]:
    return [[s.v, s.Omega_shifted, s.relative_shift] for s in samples]


def packet_rows(samples: Iterable[PacketPairSample]) -> List[List[Any]]:
    return [[s.t, s.center_g, s.width_g, s.center_e, s.width_e] for s in samples]


def scan_rows(rows: Iterable[ScanRow]) -> List[List[Any]]:
    return [[getattr(row, column) for column in SCAN_COLUMNS] for row in rows]


def angular_rows(Z: int, a: float, separations: Sequence[float], angles: Sequence[float]) -> List[List[Any]]:
    """(DeltaR, theta, V) grid of the aligned-dipole potential."""
    return [[R, theta, dd_angular(Z, a, R, theta)] for R in separations for theta in angles]


def column_label(label: str, index: int) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9]+", "_", label).strip("_")
    return cleaned or f"mode{index}"


def field_columns(problem: GpeProblem) -> List[str]:
    columns = ["x"]
    for index, label in enumerate(problem.labels):
        name = column_label(label, index)
        columns.extend([f"Re_{name}", f"Im_{name}"])
    return columns


def field_rows(problem: GpeProblem, state: GpeState) -> List[List[float]]:
    """One row per grid point: x, then Re and Im of every mode."""
    parts = [problem.grid.x]
    for values in state.psi:
        parts.extend([np.real(values), np.imag(values)])
    return np.column_stack(parts).tolist()


_PER_MODE = (
    ("norms", "norm"),
    ("centers", "center"),
    ("widths", "width"),
    ("populations", "population"),
    ("relative_phases", "phase"),
)


def observable_columns(problem: GpeProblem) -> List[str]:
    columns = ["step", "t", "total_norm", "energy", "chemical_potential", "kinetic_energy", "interaction_energy"]
    for index, label in enumerate(problem.labels):
        name = column_label(label, index)
        columns.extend(f"{prefix}_{name}" for _, prefix in _PER_MODE)
    return columns


def observable_row(step: int, obs: GpeObservables) -> List[Any]:
    data = asdict(obs)
    row: List[Any] = [
        step,
        obs.t,
        obs.total_norm,
        obs.energy,
        obs.chemical_potential,
        obs.kinetic_energy,
        obs.interaction_energy,
    ]
    for index in range(len(obs.norms)):
        row.extend(data[field][index] for field, _ in _PER_MODE)
    return row


def conservation_drift(first: GpeObservables, last: GpeObservables, steps: int) -> Tuple[float, float]:
    """(norm drift, energy drift) per 1000 steps between two snapshots."""
    scale = 1000.0 / steps if steps > 0 else 0.0
    return abs(last.total_norm - first.total_norm) * scale, abs(last.energy - first.energy) * scale
