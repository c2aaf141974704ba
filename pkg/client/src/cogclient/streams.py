"""Streaming episodes from an episode server over HTTP/JSON.

Pages through POST /v1/episodes; content is fully determined by the
request's (config, tasks, start_index), so re-running a stream replays
identical batches.
"""

from __future__ import annotations

import base64
from collections.abc import Iterator

import httpx
import numpy as np

from .batches import Batch, build_mask
from .errors import ProtocolError, TransportError
from .png import decode_png

DEFAULT_PAGE_SIZE = 64


def stream_episodes(endpoint: str, tasks: list[str], count: int,
                    *, config: dict | None = None, start_index: int = 0,
                    encoding: str = "symbolic",
                    page_size: int = DEFAULT_PAGE_SIZE,
                    timeout: float = 60.0) -> Iterator[Batch]:
    """Yield ``count`` episodes per task from the server, in (task, index)
    order, fetching ``page_size`` indices per request."""
    if count < 1:
        return
    base = endpoint.rstrip("/")
    with httpx.Client(timeout=timeout) as client:
        for task in tasks:
            fetched = 0
            while fetched < count:
                page = min(page_size, count - fetched)
                body = {
                    "tasks": [task],
                    "count": page,
                    "start_index": start_index + fetched,
                    "encoding": encoding,
                }
                if config is not None:
                    body["config"] = config
                try:
                    response = client.post(f"{base}/v1/episodes", json=body)
                except httpx.HTTPError as exc:
                    raise TransportError(str(exc)) from exc
                if response.status_code != 200:
                    raise ProtocolError(
                        f"server answered {response.status_code}: "
                        f"{response.text[:200]}")
                payload = response.json()
                episodes = payload.get("episodes")
                if not isinstance(episodes, list) or len(episodes) != page:
                    raise ProtocolError("unexpected episode page shape")
                for record in episodes:
                    yield _to_batch(record, encoding)
                fetched += page


def _to_batch(record: dict, encoding: str) -> Batch:
    images = None
    if encoding == "base64-png":
        blobs = record.get("images_b64")
        if not isinstance(blobs, list):
            raise ProtocolError("server omitted images_b64")
        images = np.stack([decode_png(base64.b64decode(blob))
                           for blob in blobs], axis=0)
    return Batch(
        task=record["task"],
        index=record["index"],
        instruction=record["instruction"],
        targets=record["targets"],
        mask=build_mask(record["targets"]),
        images=images,
        objects=record.get("frames"),
    )
