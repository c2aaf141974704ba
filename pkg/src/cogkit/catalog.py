"""The shipped task catalog, loaded from the versioned task documents."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .errors import UnknownTaskError
from .taskspec import TaskDoc, parse_task

CATALOG_VERSION = "v1"


@lru_cache(maxsize=None)
def load_catalog(version: str = CATALOG_VERSION) -> dict[str, TaskDoc]:
    """Task name -> parsed task document, in alphabetical order."""
    package = resources.files(__package__) / "data" / f"catalog_{version}"
    docs: dict[str, TaskDoc] = {}
    for entry in sorted(package.iterdir(), key=lambda p: p.name):
        if not entry.name.endswith(".task"):
            continue
        task = parse_task(entry.read_text(encoding="utf-8"))
        docs[task.name] = task
    return docs


def task_names(version: str = CATALOG_VERSION) -> list[str]:
    return list(load_catalog(version))


def get_task(name: str, version: str = CATALOG_VERSION) -> TaskDoc:
    try:
        return load_catalog(version)[name]
    except KeyError:
        raise UnknownTaskError(name) from None


def resolve_tasks(spec: str | list[str], version: str = CATALOG_VERSION) -> list[str]:
    """Expand "all" or a task-name list, validating every name."""
    if spec == "all" or spec == ["all"]:
        return task_names(version)
    names = spec.split(",") if isinstance(spec, str) else list(spec)
    for name in names:
        get_task(name, version)
    return names
