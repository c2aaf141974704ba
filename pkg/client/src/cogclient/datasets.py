"""Checksum-validated reading of on-disk episode datasets.

The dataset layout (format version 1): a ``manifest.json`` with SHA-256
checksums over every shard and image file, one ``<task>.jsonl`` shard of
line-delimited episode records per task, and, for rendered datasets, PNG
frame images under ``images/`` referenced by relative path.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections.abc import Iterator
from pathlib import Path

import numpy as np

from .batches import Batch, build_mask
from .errors import ChecksumError, FormatError
from .png import decode_png

SUPPORTED_FORMAT = 1


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


class Dataset:
    def __init__(self, directory: str | os.PathLike):
        self.root = Path(directory)
        manifest_path = self.root / "manifest.json"
        if not manifest_path.exists():
            raise FormatError(f"no manifest.json under {self.root}")
        self.manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        if self.manifest.get("format_version") != SUPPORTED_FORMAT:
            raise FormatError(
                f"unsupported format_version "
                f"{self.manifest.get('format_version')!r}")
        self._validate()

    def _validate(self) -> None:
        for rel, expected in self.manifest["checksums"].items():
            path = self.root / rel
            if not path.exists():
                raise ChecksumError(f"missing file {rel}")
            actual = _sha256(path)
            if actual != expected:
                raise ChecksumError(f"{rel}: checksum mismatch "
                                    f"({actual} != {expected})")

    @property
    def config(self) -> dict:
        return self.manifest["config"]

    def __iter__(self) -> Iterator[Batch]:
        for task in self.manifest["tasks"]:
            shard = self.root / f"{task}.jsonl"
            with open(shard, encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        yield self._to_batch(json.loads(line))

    def _to_batch(self, record: dict) -> Batch:
        images = None
        if "images" in record:
            decoded = [decode_png((self.root / rel).read_bytes())
                       for rel in record["images"]]
            images = np.stack(decoded, axis=0)
        return Batch(
            task=record["task"],
            index=record["index"],
            instruction=record["instruction"],
            targets=record["targets"],
            mask=build_mask(record["targets"]),
            images=images,
            objects=record.get("frames"),
        )


def open_dataset(path: str | os.PathLike) -> Dataset:
    """Open a dataset directory, validating every checksum up front."""
    return Dataset(path)
