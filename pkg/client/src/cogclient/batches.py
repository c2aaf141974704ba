"""Array-shaped episode batches."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Batch:
    """One episode, decoded for model consumption.

    ``images`` is an (F, H, W, 3) uint8 array, or None for symbolic
    datasets.  ``mask[t]`` is False exactly when ``targets[t]`` is invalid
    (no scoreable response for that frame).  ``targets`` keeps the record
    format's tagged dicts; ``objects`` holds the symbolic per-frame object
    lists.
    """

    task: str
    index: int
    instruction: str
    targets: list[dict]
    mask: np.ndarray
    images: np.ndarray | None = None
    objects: list[list[dict]] | None = None

    @property
    def frames(self) -> int:
        return len(self.targets)


def build_mask(targets: list[dict]) -> np.ndarray:
    return np.array([t.get("kind") != "invalid" for t in targets], dtype=bool)
