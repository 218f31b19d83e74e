"""
Configuration loading and environment settings.
"""

from .models import (
    ClockConfig,
    CobosonEntry,
    ConfigError,
    GpeConfig,
    GpeContactConfig,
    GpeCouplingConfig,
    GpeModeConfig,
    RunConfig,
    ScatterConfig,
    SpeciesConfig,
    SpectrumConfig,
    WilsonConfig,
    apply_overrides,
    load_config,
    load_section,
    read_config_file,
    validate_config,
)
from .settings import CobosonSettings, get_settings

__all__ = [
    "ClockConfig",
    "CobosonEntry",
    "CobosonSettings",
    "ConfigError",
    "GpeConfig",
    "GpeContactConfig",
    "GpeCouplingConfig",
    "GpeModeConfig",
    "RunConfig",
    "ScatterConfig",
    "SpeciesConfig",
    "SpectrumConfig",
    "WilsonConfig",
    "apply_overrides",
    "get_settings",
    "load_config",
    "load_section",
    "read_config_file",
    "validate_config",
]
