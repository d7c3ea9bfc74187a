"""Bundled default data files (stopwords, lexicons, role matrix, sample texts).

The environment variable FOLKBANGLA_DATA may point at a directory whose files
override the bundled ones by name.
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path


def data_text(name: str) -> str:
    """Read a bundled data file, honoring the FOLKBANGLA_DATA override dir."""
    override = os.environ.get("FOLKBANGLA_DATA")
    if override:
        candidate = Path(override) / name
        if candidate.is_file():
            return candidate.read_text("utf-8")
    return resources.files(__name__).joinpath(name).read_text("utf-8")


def data_path(name: str) -> Path:
    """Filesystem path of a bundled data file (package installed from source)."""
    override = os.environ.get("FOLKBANGLA_DATA")
    if override:
        candidate = Path(override) / name
        if candidate.is_file():
            return candidate
    return Path(str(resources.files(__name__).joinpath(name)))
