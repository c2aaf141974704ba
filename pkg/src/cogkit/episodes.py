"""Deterministic per-task episode streams tying the catalog to the generators.

Episode ``index`` within a task, together with the catalog version, the
config and its seed, fully determines the episode: the per-episode random
stream is derived from (seed, catalog version, task name, index).
"""

from __future__ import annotations

from collections.abc import Iterator

from .catalog import CATALOG_VERSION, get_task
from .generation import GenStats, generate_episode
from .handcrafted import generate_handcrafted
from .operators import instantiate
from .rng import derive_rng
from .types import Episode, GenerationConfig


def episode_for(task_name: str, config: GenerationConfig, index: int,
                *, catalog_version: str = CATALOG_VERSION,
                stats: GenStats | None = None) -> Episode:
    """Generate episode ``index`` of a catalog task."""
    doc = get_task(task_name, catalog_version)
    rng = derive_rng(config.seed, index,
                     label=f"{catalog_version}:{task_name}")
    instance = instantiate(doc.graph, rng, task_name=task_name)
    seed_path = (config.seed, index)
    if doc.generator == "script":
        return generate_handcrafted(task_name, instance, config, rng,
                                    stats=stats, seed_path=seed_path)
    return generate_episode(instance, config, rng, stats=stats,
                            seed_path=seed_path)


def episode_stream(task_names: list[str], config: GenerationConfig,
                   count: int, start_index: int = 0,
                   *, catalog_version: str = CATALOG_VERSION) -> Iterator[Episode]:
    """Yield ``count`` episodes per task, ordered by (task, index)."""
    for task_name in task_names:
        for index in range(start_index, start_index + count):
            yield episode_for(task_name, config, index,
                              catalog_version=catalog_version)
