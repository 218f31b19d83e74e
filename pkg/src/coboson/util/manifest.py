"""
Run manifests written next to every data file.
"""

from __future__ import annotations

import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from ..constants import CONSTANTS_VERSION
from .tables import render_json
from .filesystem import write_text_file

logger = logging.getLogger(__name__)


def utc_now() -> datetime:
    """Return current UTC datetime."""
    return datetime.now(timezone.utc)


def library_version() -> str:
    from .. import __version__

    return __version__


class RunManifest(BaseModel):
    """
    Provenance of one CLI run.

    Timestamps live only here so the data files themselves stay byte-identical
    across identical runs.

    Attributes:
        command: Subcommand path, e.g. "clock doppler".
        arguments: Normalized arguments of the subcommand.
        config_hash: Hash of the validated configuration, if one was loaded.
        constants_version: Constants table identity.
        coefficient_set: Wilson coefficient set name, if any.
        library_version: Installed package version.
        started_at: UTC start time.
        finished_at: UTC completion time.
        outputs: Data files written by the run.
        diagnostics: Command-specific summary values.
    """
    command: str
    arguments: Dict[str, Any] = Field(default_factory=dict)
    config_hash: Optional[str] = None
    constants_version: str = CONSTANTS_VERSION
    coefficient_set: Optional[str] = None
    library_version: str = Field(default_factory=library_version)
    started_at: datetime = Field(default_factory=utc_now)
    finished_at: Optional[datetime] = None
    outputs: List[str] = Field(default_factory=list)
    diagnostics: Dict[str, Any] = Field(default_factory=dict)

    def add_output(self, path: Path | str) -> None:
        name = str(Path(path))
        if name not in self.outputs:
            self.outputs.append(name)


def manifest_path(data_path: Path | str) -> Path:
    """
    Sidecar path of a data file, `<stem>.manifest.json` next to it.

    An existing directory (a multi-file run output) gets `run.manifest.json`
    inside it. A file without a suffix keeps its full name as the stem.
    """
    target = Path(data_path)
    if target.is_dir():
        return target / "run.manifest.json"
    return target.with_name(f"{target.stem}.manifest.json")


def write_manifest(data_path: Path | str, manifest: RunManifest) -> Path:
    """Stamp the finish time and write the sidecar of `data_path`."""
    manifest.finished_at = utc_now()
    target = manifest_path(data_path)
    write_text_file(target, render_json(manifest.model_dump(mode="json")))
    logger.info("Wrote manifest %s", target)
    return target
