"""Dataset persistence: line-delimited JSON shards plus a checksum manifest.

One shard per task (``<task>.jsonl``), records ordered by episode index.
Rendered datasets additionally store one PNG per frame under ``images/``.
The manifest alone (catalog version, config, seed, counts) suffices to
regenerate every shard bit-exactly; ``created_at`` is excluded from the
checksum domain so regeneration is checkable.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .catalog import CATALOG_VERSION, get_task
from .errors import ChecksumError, FormatVersionError
from .operators import TaskInstance
from .png import encode_png
from .render import rasterize_frame
from .types import (
    GenerationConfig,
    Episode,
    Frame,
    Loc,
    ResponseValue,
    SceneObject,
)

FORMAT_VERSION = 1
MANIFEST_NAME = "manifest.json"


@dataclass(frozen=True)
class DatasetManifest:
    format_version: int
    catalog_version: str
    config: GenerationConfig
    tasks: tuple[str, ...]
    episodes_per_task: int
    seed: int
    mode: str  # symbolic | rendered
    created_at: str
    checksums: dict[str, str]

    def to_obj(self) -> dict:
        return {
            "format_version": self.format_version,
            "catalog_version": self.catalog_version,
            "config": self.config.to_obj(),
            "tasks": list(self.tasks),
            "episodes_per_task": self.episodes_per_task,
            "seed": self.seed,
            "mode": self.mode,
            "created_at": self.created_at,
            "checksums": dict(sorted(self.checksums.items())),
        }

    @staticmethod
    def from_obj(obj: dict) -> "DatasetManifest":
        if obj.get("format_version") != FORMAT_VERSION:
            raise FormatVersionError(
                f"dataset format {obj.get('format_version')!r} unsupported "
                f"(expected {FORMAT_VERSION})")
        return DatasetManifest(
            format_version=obj["format_version"],
            catalog_version=obj["catalog_version"],
            config=GenerationConfig.from_obj(obj["config"]),
            tasks=tuple(obj["tasks"]),
            episodes_per_task=obj["episodes_per_task"],
            seed=obj["seed"],
            mode=obj["mode"],
            created_at=obj["created_at"],
            checksums=dict(obj["checksums"]),
        )


# ---------------------------------------------------------------------------
# Record (de)serialization

def episode_to_record(episode: Episode, image_paths: list[str] | None = None) -> dict:
    record = {
        "task": episode.task_name,
        "index": episode.seed_path[1],
        "instruction": episode.instruction,
        "bindings": _bindings_to_obj(episode.instance),
        "frames": [
            [
                {
                    "color": obj.color,
                    "shape": obj.shape,
                    "x": obj.loc.x,
                    "y": obj.loc.y,
                    "provenance": obj.provenance,
                }
                for obj in frame.objects
            ]
            for frame in episode.frames
        ],
        "targets": [target.to_obj() for target in episode.targets],
        "seed_path": list(episode.seed_path),
    }
    if image_paths is not None:
        record["images"] = image_paths
    return record


def record_to_episode(record: dict, config: GenerationConfig,
                      catalog_version: str) -> Episode:
    doc = get_task(record["task"], catalog_version)
    instance = _instance_from_obj(doc.graph, record["task"], record["bindings"])
    frames = []
    for index, objs in enumerate(record["frames"]):
        frame = Frame(index)
        frame.objects = [
            SceneObject(color=o["color"], shape=o["shape"],
                        loc=Loc(o["x"], o["y"]), frame=index,
                        provenance=o.get("provenance", "required"))
            for o in objs
        ]
        frames.append(frame)
    return Episode(
        task_name=record["task"],
        instance=instance,
        instruction=record["instruction"],
        frames=frames,
        targets=[ResponseValue.from_obj(t) for t in record["targets"]],
        config=config,
        seed_path=tuple(record["seed_path"]),
    )


def _bindings_to_obj(instance: TaskInstance) -> dict:
    out = {}
    for (node_id, slot), value in instance.bindings.items():
        key = f"{node_id}.{slot}"
        out[key] = [value.x, value.y] if isinstance(value, Loc) else value
    return dict(sorted(out.items()))


def _instance_from_obj(graph, task_name: str, obj: dict) -> TaskInstance:
    bindings = {}
    for key, value in obj.items():
        node_id, slot = key.split(".", 1)
        if isinstance(value, list):
            value = Loc(value[0], value[1])
        bindings[(node_id, slot)] = value
    return TaskInstance(graph=graph, bindings=bindings, task_name=task_name)


def _dumps(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def _sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


# ---------------------------------------------------------------------------
# Writing

def write_dataset(episodes: Iterable[Episode], out_dir: str | os.PathLike,
                  mode: str = "symbolic", *,
                  config: GenerationConfig,
                  tasks: list[str],
                  episodes_per_task: int,
                  catalog_version: str = CATALOG_VERSION) -> DatasetManifest:
    """Stream episodes to disk and return the verified manifest.

    Episodes must arrive ordered by (task, index); images in rendered mode
    go to ``images/<task>/<index>_<frame>.png`` referenced by relative path.
    """
    if mode not in ("symbolic", "rendered"):
        raise ValueError("mode must be 'symbolic' or 'rendered'")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    handles: dict[str, object] = {}
    checksums: dict[str, str] = {}
    try:
        for episode in episodes:
            task = episode.task_name
            if task not in handles:
                handles[task] = open(out / f"{task}.jsonl", "w",
                                     encoding="utf-8", newline="\n")
            image_paths = None
            if mode == "rendered":
                image_paths = _write_images(out, episode)
            record = episode_to_record(episode, image_paths)
            handles[task].write(_dumps(record) + "\n")
    finally:
        for handle in handles.values():
            handle.close()

    for task in tasks:
        shard = out / f"{task}.jsonl"
        if not shard.exists():
            shard.write_text("", encoding="utf-8")
        checksums[f"{task}.jsonl"] = _sha256_file(shard)
    if mode == "rendered":
        image_root = out / "images"
        if image_root.exists():
            for path in sorted(image_root.rglob("*.png")):
                checksums[str(path.relative_to(out))] = _sha256_file(path)

    manifest = DatasetManifest(
        format_version=FORMAT_VERSION,
        catalog_version=catalog_version,
        config=config,
        tasks=tuple(tasks),
        episodes_per_task=episodes_per_task,
        seed=config.seed,
        mode=mode,
        created_at=datetime.now(timezone.utc).isoformat(),
        checksums=checksums,
    )
    manifest_path = out / MANIFEST_NAME
    manifest_path.write_text(json.dumps(manifest.to_obj(), indent=2,
                                        ensure_ascii=False) + "\n",
                             encoding="utf-8")
    _verify_checksums(out, manifest)  # post-write verification
    return manifest


def _write_images(out: Path, episode: Episode) -> list[str]:
    folder = out / "images" / episode.task_name
    folder.mkdir(parents=True, exist_ok=True)
    paths = []
    for frame in episode.frames:
        name = f"{episode.seed_path[1]:06d}_{frame.index}.png"
        rel = f"images/{episode.task_name}/{name}"
        (folder / name).write_bytes(
            encode_png(rasterize_frame(frame, episode.config.canvas)))
        paths.append(rel)
    return paths


def _verify_checksums(root: Path, manifest: DatasetManifest) -> None:
    for rel, expected in manifest.checksums.items():
        path = root / rel
        if not path.exists():
            raise ChecksumError(f"missing shard {rel}")
        actual = _sha256_file(path)
        if actual != expected:
            raise ChecksumError(
                f"shard {rel} checksum mismatch: {actual} != {expected}")


# ---------------------------------------------------------------------------
# Reading

class DatasetReader:
    """Checksum-validated, lazily-iterating dataset access."""

    def __init__(self, directory: str | os.PathLike):
        self.root = Path(directory)
        manifest_path = self.root / MANIFEST_NAME
        if not manifest_path.exists():
            raise FileNotFoundError(f"no {MANIFEST_NAME} in {self.root}")
        self.manifest = DatasetManifest.from_obj(
            json.loads(manifest_path.read_text(encoding="utf-8")))
        _verify_checksums(self.root, self.manifest)

    def __iter__(self) -> Iterator[Episode]:
        config = self.manifest.config
        for task in self.manifest.tasks:
            with open(self.root / f"{task}.jsonl", encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        yield record_to_episode(
                            json.loads(line), config,
                            self.manifest.catalog_version)

    def records(self) -> Iterator[dict]:
        for task in self.manifest.tasks:
            with open(self.root / f"{task}.jsonl", encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        yield json.loads(line)


def read_dataset(directory: str | os.PathLike) -> DatasetReader:
    return DatasetReader(directory)
