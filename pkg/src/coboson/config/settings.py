"""
Environment settings loading helpers.
"""

from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field


def _load_dotenv() -> None:
    """Load a local .env file from the current working directory if present."""
    cwd_env = Path.cwd() / ".env"
    if cwd_env.exists():
        load_dotenv(dotenv_path=cwd_env, override=True)


_load_dotenv()


class CobosonSettings(BaseModel):
    """
    Settings read from environment variables.

    Attributes:
        output_dir: Default directory for data files when --out is relative or omitted.
        log_level: Default log level when --log-level is not given.
    """
    output_dir: Optional[str] = Field(default=None, alias="COBOSON_OUTPUT_DIR")
    log_level: Optional[str] = Field(default=None, alias="COBOSON_LOG_LEVEL")

    model_config = {
        "populate_by_name": True,
    }

    def output_path(self) -> Path:
        return Path(self.output_dir or ".").expanduser()


@lru_cache(maxsize=1)
def get_settings() -> CobosonSettings:
    """
    Load settings from environment/.env exactly once.
    """
    values = {field.alias: os.getenv(field.alias) for field in CobosonSettings.model_fields.values()}
    return CobosonSettings(**values)
