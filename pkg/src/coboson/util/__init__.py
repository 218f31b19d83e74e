"""
Shared helpers for deterministic output, manifests and parameter sweeps.
"""

from .filesystem import ensure_directory, file_lock, write_text_file
from .manifest import RunManifest, manifest_path, utc_now, write_manifest
from .sweep import parse_sweep
from .tables import format_value, records_to_rows, render_csv, render_json, write_csv, write_json

__all__ = [
    "RunManifest",
    "ensure_directory",
    "file_lock",
    "format_value",
    "manifest_path",
    "parse_sweep",
    "records_to_rows",
    "render_csv",
    "render_json",
    "utc_now",
    "write_csv",
    "write_json",
    "write_manifest",
    "write_text_file",
]
