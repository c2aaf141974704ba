"""Derived random streams for reproducible, parallel-safe generation.

Streams are keyed by (seed, label, index) through SHA-256, so distinct
episodes get statistically independent generators and the same key always
replays the same draws on every platform (Mersenne Twister, not the
platform default entropy).
"""

from __future__ import annotations

import hashlib
import random


def derive_rng(seed: int, index: int, label: str = "") -> random.Random:
    """Return an independent, reproducible random stream for one episode."""
    if not 0 <= seed < 2**64:
        raise ValueError("seed must fit in 64 bits")
    if not 0 <= index < 2**64:
        raise ValueError("index must fit in 64 bits")
    material = f"cogkit:{seed}:{label}:{index}".encode("utf-8")
    digest = hashlib.sha256(material).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))
