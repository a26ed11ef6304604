"""Bundled knowledge bases."""
from __future__ import annotations

from importlib import resources


def path(name: str) -> str:
    """Filesystem path of a bundled ``.laf`` file, e.g. ``path("fertility.laf")``."""
    return str(resources.files(__name__).joinpath(name))


def read(name: str) -> str:
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")
