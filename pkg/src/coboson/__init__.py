"""
Composite-boson numerics: hydrogenlike spectra, mass-defect clocks, scattering
potentials and a multi-mode modified Gross-Pitaevskii solver.
"""

from importlib import metadata as _metadata

try:
    __version__ = _metadata.version("coboson")
except _metadata.PackageNotFoundError:  # pragma: no cover
    __version__ = "0.0.0"

__all__ = ["__version__"]
