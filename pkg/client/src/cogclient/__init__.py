"""cogclient: consumer-side access to cogkit episode datasets.

Reads checksum-validated datasets from disk and streams episodes from a
cogkit episode server, yielding array-shaped batches for ML pipelines.
The client performs no generation or scoring logic of its own; it is a
pure decoder of the documented record format and HTTP protocol.
"""

__version__ = "0.1.0"

from .batches import Batch
from .datasets import open_dataset
from .errors import (
    ChecksumError,
    FormatError,
    ProtocolError,
    TransportError,
)
from .streams import stream_episodes

__all__ = [
    "Batch",
    "ChecksumError",
    "FormatError",
    "ProtocolError",
    "TransportError",
    "open_dataset",
    "stream_episodes",
]
