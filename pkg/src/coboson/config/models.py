"""
Pydantic models for validating and hashing run configuration files.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Annotated, Any, Callable, Dict, List, Literal, Mapping, Optional, Tuple, Type, TypeVar

import numpy as np
from pydantic import BaseModel, BeforeValidator, Field, ValidationError, model_validator

from ..clock import ClockParams, clock_preset, reduce_to_clock
from ..constants import ATOMIC, PhysicalConstants, SpeciesParams, make_species, parse_quantity, species_preset
from ..gpe import (
    GpeMode,
    GpeProblem,
    GpeState,
    Grid1D,
    constant_coupling,
    density_contact,
    dipole_coupling,
    gaussian_field,
    initial_state,
    mode_from_state,
    plane_wave_field,
)
from ..scattering import CobosonConfig
from ..spectrum import QuantumNumbers, WilsonCoefficients, validate, wilson_preset
from ..util.sweep import parse_sweep

logger = logging.getLogger(__name__)


class ConfigError(RuntimeError):
    """Raised when configuration files cannot be loaded or validated."""


def _energy(value: Any) -> float:
    return parse_quantity(value, "energy")


def _length(value: Any) -> float:
    return parse_quantity(value, "length")


def _time(value: Any) -> float:
    return parse_quantity(value, "time")


def _mass(value: Any) -> float:
    return parse_quantity(value, "mass")


def _sweep(dimension: Optional[str]) -> Callable[[Any], List[float]]:
    def parse(value: Any) -> List[float]:
        return parse_sweep(value, dimension)

    return parse


def _vector(value: Any) -> List[float]:
    if isinstance(value, str):
        value = [part for part in value.split(",") if part.strip()]
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise ValueError(f"expected a 3-vector, got {value!r}")
    return [parse_quantity(item) for item in value]


def _beta(value: Any) -> str:
    beta = validate(QuantumNumbers.parse(value))
    return ",".join(str(item) for item in beta.as_tuple())


Energy = Annotated[float, BeforeValidator(_energy)]
Length = Annotated[float, BeforeValidator(_length)]
Time = Annotated[float, BeforeValidator(_time)]
Mass = Annotated[float, BeforeValidator(_mass)]
LengthSweep = Annotated[List[float], BeforeValidator(_sweep("length"))]
TimeSweep = Annotated[List[float], BeforeValidator(_sweep("time"))]
VelocitySweep = Annotated[List[float], BeforeValidator(_sweep("velocity"))]
PlainSweep = Annotated[List[float], BeforeValidator(_sweep(None))]
Vector = Annotated[List[float], BeforeValidator(_vector)]
StateLabel = Annotated[str, BeforeValidator(_beta)]


class SpeciesConfig(BaseModel):
    """
    Coboson species, either a named preset or explicit constituents.

    Attributes:
        preset: hydrogen, helium-ion, positronium or muonium.
        name: Label for custom species.
        m_e: Electron mass (electron masses unless a unit is given).
        m_n: Nucleus mass.
        Z: Nuclear charge number.
        a_e: Electron anomalous moment.
        a_n: Nucleus anomalous moment.
    """
    preset: Optional[str] = None
    name: str = "custom"
    m_e: Optional[Mass] = None
    m_n: Optional[Mass] = None
    Z: Optional[int] = None
    a_e: float = 0.0
    a_n: float = 0.0

    model_config = {
        "extra": "forbid",
    }

    @model_validator(mode="after")
    def _validate_source(self) -> "SpeciesConfig":
        explicit = [self.m_e, self.m_n, self.Z]
        if self.preset is not None:
            if any(value is not None for value in explicit):
                raise ValueError("species.preset cannot be combined with m_e, m_n or Z.")
        elif any(value is None for value in explicit):
            raise ValueError("species needs either a preset or all of m_e, m_n and Z.")
        self.build()
        return self

    def build(self) -> SpeciesParams:
        if self.preset is not None:
            return species_preset(self.preset)
        return make_species(self.m_e, self.m_n, self.Z, name=self.name, a_e=self.a_e, a_n=self.a_n)


class WilsonConfig(BaseModel):
    """
    Wilson coefficient set: a preset plus optional per-coefficient overrides.
    """
    preset: Literal["tree", "bare"] = "tree"
    cF_e: Optional[float] = None
    cF_n: Optional[float] = None
    cD_e: Optional[float] = None
    cD_n: Optional[float] = None
    cS_e: Optional[float] = None
    cS_n: Optional[float] = None
    cW1_e: Optional[float] = None
    cW1_n: Optional[float] = None
    cA1_e: Optional[float] = None
    cA1_n: Optional[float] = None
    d1_en: Optional[float] = None
    d1_ne: Optional[float] = None
    d2_en: Optional[float] = None
    d2_ne: Optional[float] = None

    model_config = {
        "extra": "forbid",
    }

    def overrides(self) -> Dict[str, float]:
        return {key: value for key, value in self.model_dump(exclude={"preset"}).items() if value is not None}

    def build(self, species: SpeciesParams) -> WilsonCoefficients:
        base = wilson_preset(self.preset, species)
        overrides = self.overrides()
        if not overrides:
            return base
        return base.with_overrides(name=f"{self.preset}+overrides", **overrides)


class SpectrumConfig(BaseModel):
    n_max: int = Field(default=2, ge=1)
    momenta: PlainSweep = Field(default_factory=lambda: [0.0])
    include_P4: bool = True

    model_config = {
        "extra": "forbid",
    }


class ClockConfig(BaseModel):
    """
    Two-level clock and its sweeps.

    Attributes:
        ground: Ground state "n,l,S,j,mj".
        excited: Excited state "n,l,S,j,mj".
        preset: Measured clock transition (e.g. strontium88) used instead of the two states.
        velocities: Velocity sweep for the Doppler table.
        times: Time sweep for the wave-packet table.
        x0: Initial packet center.
        sigma0: Initial packet width.
        P0: Common initial momentum.
        temperature: Optional k_B T for a thermal Doppler estimate.
    """
    ground: StateLabel = "1,0,0,0,0"
    excited: StateLabel = "2,1,0,1,0"
    preset: Optional[str] = None
    velocities: VelocitySweep = Field(default_factory=lambda: [0.0])
    times: TimeSweep = Field(default_factory=lambda: [0.0])
    x0: Length = 0.0
    sigma0: Length = Field(default=10.0, gt=0)
    P0: float = 0.0
    temperature: Optional[Energy] = None

    model_config = {
        "extra": "forbid",
    }

    @model_validator(mode="after")
    def _validate_states(self) -> "ClockConfig":
        if self.preset is None and self.ground == self.excited:
            raise ValueError("clock.ground and clock.excited must differ.")
        return self

    def build(self, species: SpeciesParams, constants: PhysicalConstants = ATOMIC) -> ClockParams:
        if self.preset is not None:
            return clock_preset(self.preset, constants)
        return reduce_to_clock(species, QuantumNumbers.parse(self.ground), QuantumNumbers.parse(self.excited), constants)


class CobosonEntry(BaseModel):
    """Internal vectors of one coboson (atomic units)."""
    r: Vector = Field(default_factory=lambda: [0.0, 0.0, 1.0])
    P: Vector = Field(default_factory=lambda: [0.0, 0.0, 0.0])
    spin_n: Vector = Field(default_factory=lambda: [0.0, 0.0, 0.0])
    spin_e: Vector = Field(default_factory=lambda: [0.0, 0.0, 0.0])

    model_config = {
        "extra": "forbid",
    }

    def build(self) -> CobosonConfig:
        return CobosonConfig(R=np.zeros(3), r=self.r, P=self.P, spin_n=self.spin_n, spin_e=self.spin_e)


class ScatterConfig(BaseModel):
    first: CobosonEntry = Field(default_factory=CobosonEntry)
    second: CobosonEntry = Field(default_factory=CobosonEntry)
    separations: LengthSweep = Field(default_factory=lambda: [10.0])
    angles: PlainSweep = Field(default_factory=lambda: [0.0])
    angle_unit: Literal["rad", "deg"] = "rad"

    model_config = {
        "extra": "forbid",
    }

    @property
    def angles_rad(self) -> List[float]:
        if self.angle_unit == "deg":
            return [math.radians(angle) for angle in self.angles]
        return list(self.angles)


class GpeModeConfig(BaseModel):
    """
    One condensate mode.

    A mode is either a bound state ("n,l,S,j,mj", with mass and energy from the
    species) or an explicit mass with an energy offset.
    """
    label: Optional[str] = None
    state: Optional[StateLabel] = None
    mass: Optional[Mass] = None
    offset: Energy = 0.0
    h_I: Energy = 0.0
    include_E1: bool = True
    potential: Literal["none", "harmonic"] = "none"
    omega: Energy = 0.0
    center: Length = 0.0
    initial: Literal["gaussian", "plane_wave", "uniform", "empty"] = "gaussian"
    x0: Length = 0.0
    sigma: Optional[Length] = None
    momentum: float = 0.0
    index: int = 0
    weight: float = Field(default=1.0, ge=0)

    model_config = {
        "extra": "forbid",
    }

    @model_validator(mode="after")
    def _validate_source(self) -> "GpeModeConfig":
        if (self.state is None) == (self.mass is None):
            raise ValueError("gpe.mode needs exactly one of state or mass.")
        if self.state is not None and self.offset != 0.0:
            raise ValueError("gpe.mode offset is derived from the state; use h_I for extra shifts.")
        return self

    def build(
        self,
        grid: Grid1D,
        species: SpeciesParams,
        wilson: WilsonCoefficients,
        position: int,
        constants: PhysicalConstants,
    ) -> GpeMode:
        if self.state is not None:
            mode = mode_from_state(
                species,
                wilson,
                QuantumNumbers.parse(self.state),
                h_I=self.h_I,
                include_E1=self.include_E1,
                constants=constants,
                label=self.label,
            )
        else:
            mode = GpeMode(label=self.label or f"mode{position}", mass=self.mass, offset=self.offset + self.h_I)
        if self.potential == "harmonic":
            trap = 0.5 * mode.mass * self.omega**2 * (grid.x - self.center) ** 2
            mode = GpeMode(
                label=mode.label, mass=mode.mass, offset=mode.offset, potential=trap, rest_energy=mode.rest_energy
            )
        return mode

    def initial_field(self, grid: Grid1D) -> Optional[np.ndarray]:
        scale = math.sqrt(self.weight)
        if self.initial == "empty" or self.weight == 0.0:
            return None
        if self.initial == "plane_wave":
            return scale * plane_wave_field(grid, self.index)
        if self.initial == "uniform":
            return np.full(grid.points, scale / math.sqrt(grid.length), dtype=complex)
        sigma = self.sigma if self.sigma is not None else grid.length / 10.0
        return scale * gaussian_field(grid, center=self.x0, sigma=sigma, momentum=self.momentum)


class GpeCouplingConfig(BaseModel):
    """
    Mode-changing one-body coupling.

    kind = "constant": T_ab = rabi/2 exp(i phase).
    kind = "dipole": -d_ab . E(t) from the bound states of modes a and b with
    E(t) = amplitude * polarization * cos(frequency t).
    """
    a: int = Field(ge=0)
    b: int = Field(ge=0)
    kind: Literal["constant", "dipole"] = "constant"
    rabi: Energy = 0.0
    phase: float = 0.0
    amplitude: float = 0.0
    polarization: Vector = Field(default_factory=lambda: [0.0, 0.0, 1.0])
    frequency: Energy = 0.0

    model_config = {
        "extra": "forbid",
    }

    @model_validator(mode="after")
    def _validate_pair(self) -> "GpeCouplingConfig":
        if self.a == self.b:
            raise ValueError("gpe.coupling needs two different modes.")
        return self


class GpeContactConfig(BaseModel):
    """One element eta[a, n, b, m] of the contact tensor; symmetric partners are filled in."""
    indices: Tuple[int, int, int, int]
    value: float
    value_imag: float = 0.0

    model_config = {
        "extra": "forbid",
    }


class GpeConfig(BaseModel):
    """
    Gross-Pitaevskii problem: grid, modes, couplings, contact tensor and stepping controls.
    """
    length: Length = Field(default=20.0, gt=0)
    points: int = Field(default=256, ge=2)
    include_P4: bool = False
    bare_mass: Optional[Mass] = None
    reference_energy: Optional[Energy] = None
    dt: Time = Field(default=1e-3, gt=0)
    steps: int = Field(default=1000, ge=0)
    snap_every: int = Field(default=100, ge=0)
    tol: float = Field(default=1e-10, gt=0)
    dtau: float = Field(default=1e-3, gt=0)
    max_iter: int = Field(default=100_000, ge=1)
    g: Optional[List[List[float]]] = None
    modes: List[GpeModeConfig] = Field(min_length=1)
    couplings: List[GpeCouplingConfig] = Field(default_factory=list)
    contacts: List[GpeContactConfig] = Field(default_factory=list)

    model_config = {
        "extra": "forbid",
    }

    @model_validator(mode="after")
    def _validate_indices(self) -> "GpeConfig":
        m = len(self.modes)
        for coupling in self.couplings:
            if coupling.a >= m or coupling.b >= m:
                raise ValueError(f"gpe.coupling ({coupling.a}, {coupling.b}) out of range for {m} modes.")
            if coupling.kind == "dipole" and (
                self.modes[coupling.a].state is None or self.modes[coupling.b].state is None
            ):
                raise ValueError("Dipole couplings need modes defined by bound states.")
        for contact in self.contacts:
            if any(not 0 <= index < m for index in contact.indices):
                raise ValueError(f"gpe.contact indices {contact.indices} out of range for {m} modes.")
        if self.g is not None and (len(self.g) != m or any(len(row) != m for row in self.g)):
            raise ValueError(f"gpe.g must be a {m}x{m} matrix.")
        return self

    @property
    def weights(self) -> List[float]:
        return [mode.weight for mode in self.modes]

    def grid(self) -> Grid1D:
        return Grid1D(length=self.length, points=self.points)

    def contact_tensor(self) -> Optional[np.ndarray]:
        m = len(self.modes)
        if self.g is None and not self.contacts:
            return None
        eta = density_contact(self.g) if self.g is not None else np.zeros((m, m, m, m), dtype=complex)
        for contact in self.contacts:
            a, n, b, mu = contact.indices
            value = complex(contact.value, contact.value_imag)
            eta[a, n, b, mu] = value
            eta[n, a, mu, b] = value
            eta[b, mu, a, n] = np.conj(value)
            eta[mu, b, n, a] = np.conj(value)
        return eta

    def coupling_term(
        self, species: SpeciesParams
    ) -> np.ndarray | Callable[[np.ndarray, float], np.ndarray] | None:
        m = len(self.modes)
        if not self.couplings:
            return None
        constant = constant_coupling(
            m,
            {
                (item.a, item.b): 0.5 * item.rabi * complex(math.cos(item.phase), math.sin(item.phase))
                for item in self.couplings
                if item.kind == "constant"
            },
        )
        driven = [
            dipole_coupling(
                species,
                QuantumNumbers.parse(self.modes[item.a].state),
                QuantumNumbers.parse(self.modes[item.b].state),
                item.amplitude,
                n_modes=m,
                indices=(item.a, item.b),
                polarization=item.polarization,
                frequency=item.frequency,
            )
            for item in self.couplings
            if item.kind == "dipole"
        ]
        if not driven:
            return constant

        def coupling(x: np.ndarray, t: float) -> np.ndarray:
            total = np.broadcast_to(constant, (len(x), m, m)).copy()
            for term in driven:
                total += term(x, t)
            return total

        return coupling

    def build_problem(
        self,
        species: SpeciesParams,
        wilson: WilsonCoefficients,
        constants: PhysicalConstants = ATOMIC,
    ) -> GpeProblem:
        grid = self.grid()
        modes = [mode.build(grid, species, wilson, index, constants) for index, mode in enumerate(self.modes)]
        return GpeProblem(
            grid=grid,
            modes=modes,
            coupling=self.coupling_term(species),
            contact=self.contact_tensor(),
            include_P4=self.include_P4,
            c=constants.c,
            bare_mass=self.bare_mass,
            reference_energy=self.reference_energy,
        )

    def build_state(self) -> GpeState:
        grid = self.grid()
        return initial_state(grid, [mode.initial_field(grid) for mode in self.modes])


class RunConfig(BaseModel):
    """
    Top-level run configuration.

    Attributes:
        species: Coboson species (required).
        wilson: Wilson coefficient set.
        spectrum: Level and dispersion table settings.
        clock: Clock reduction and sweeps.
        scatter: Scattering geometry and sweeps.
        gpe: Gross-Pitaevskii problem, if any.
    """
    species: SpeciesConfig
    wilson: WilsonConfig = Field(default_factory=WilsonConfig)
    spectrum: SpectrumConfig = Field(default_factory=SpectrumConfig)
    clock: ClockConfig = Field(default_factory=ClockConfig)
    scatter: ScatterConfig = Field(default_factory=ScatterConfig)
    gpe: Optional[GpeConfig] = None

    model_config = {
        "extra": "forbid",
    }

    def build_species(self) -> SpeciesParams:
        return self.species.build()

    def build_wilson(self) -> WilsonCoefficients:
        return self.wilson.build(self.build_species())

    @property
    def hash(self) -> str:
        """
        Deterministic hash of the normalized config, used in run manifests.
        """
        payload = self.model_dump(mode="json", round_trip=True)
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()


def read_config_file(path: Path | str) -> Dict[str, Any]:
    """
    Read a TOML (or, with a .json suffix, JSON) file into a plain mapping.

    Raises:
        ConfigError: If the file is missing, unreadable, or not a table.
    """
    config_path = Path(path).expanduser().resolve()
    if not config_path.exists():
        raise ConfigError(f"Configuration file not found: {config_path}")

    try:
        if config_path.suffix.lower() == ".json":
            with config_path.open("r", encoding="utf-8") as handle:
                raw_data: Any = json.load(handle)
        else:
            with config_path.open("rb") as handle:
                raw_data = tomllib.load(handle)
    except OSError as exc:
        raise ConfigError(f"Unable to read configuration file: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"Invalid TOML in configuration file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"Invalid JSON in configuration file: {exc}") from exc
    if not isinstance(raw_data, dict):
        raise ConfigError("Configuration root must be a TOML table/object.")
    return raw_data


def load_config(path: Path | str) -> RunConfig:
    """
    Load and validate a TOML (or JSON) config file into a RunConfig instance.

    Args:
        path: Path to the configuration file; a .json suffix selects the JSON reader.

    Returns:
        A validated RunConfig object.

    Raises:
        ConfigError: If the file is missing, unreadable, or invalid.
    """
    return validate_config(read_config_file(path))


SectionT = TypeVar("SectionT", bound=BaseModel)


def load_section(path: Path | str, model: Type[SectionT], key: str) -> SectionT:
    """
    Validate one table of a file against `model`.

    The table is taken from `key` when present, otherwise the whole file is the
    table, so a bare geometry or Wilson file works as well as a full run config.
    A run config without the table yields the model defaults.
    """
    raw = read_config_file(path)
    if key in raw:
        section = raw[key]
    elif set(raw) & set(RunConfig.model_fields):
        section = {}
    else:
        section = raw
    try:
        return model.model_validate(section)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc


def validate_config(data: Any) -> RunConfig:
    """Validate an already parsed mapping."""
    normalized = _normalize_schema(data)
    try:
        config = RunConfig.model_validate(normalized)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc
    logger.debug("Loaded configuration for species %s (hash %s)", config.species.preset or config.species.name, config.hash[:12])
    return config


def _normalize_schema(data: Any) -> Dict[str, Any]:
    """
    Map the singular [[gpe.mode]], [[gpe.coupling]] and [[gpe.contact]] table arrays
    onto the plural model fields.
    """
    if not isinstance(data, dict):
        raise ConfigError("Configuration root must be a TOML table/object.")
    normalized = dict(data)
    gpe = normalized.get("gpe")
    if gpe is None:
        return normalized
    if not isinstance(gpe, dict):
        raise ConfigError("Invalid [gpe] block; expected a table.")
    gpe = dict(gpe)
    for singular, plural in (("mode", "modes"), ("coupling", "couplings"), ("contact", "contacts")):
        if plural in gpe:
            raise ConfigError(f"Use [[gpe.{singular}]] blocks (singular) instead of [[gpe.{plural}]].")
        gpe[plural] = _coerce_table_array(gpe.pop(singular, None), f"gpe.{singular}")
    normalized["gpe"] = gpe
    return normalized


def _coerce_table_array(value: Any, label: str) -> list[dict]:
    """Coerce a TOML table or array-of-tables into a list of dicts."""
    if value is None:
        return []
    if isinstance(value, dict):
        return [value]
    if isinstance(value, list):
        if not all(isinstance(item, dict) for item in value):
            raise ConfigError(f"Each [[{label}]] entry must be a table/object.")
        return value
    raise ConfigError(f"Invalid [{label}] block; expected a table or array of tables.")


def apply_overrides(model: SectionT, updates: Mapping[str, Any]) -> SectionT:
    """
    Re-validate `model` with `updates` applied and return the new instance.

    Raises:
        ConfigError: If the updated values fail validation.
    """
    if not updates:
        return model
    data = model.model_dump()
    data.update(updates)
    try:
        return type(model).model_validate(data)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc
