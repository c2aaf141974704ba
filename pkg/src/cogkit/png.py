"""Minimal PNG codec for 8-bit RGB images.

Hand-rolled so written bytes depend only on pixel content (fixed zlib
level, filter 0, no interlace, no ancillary chunks) and dataset checksums
stay stable across library versions and platforms.
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def _chunk(tag: bytes, payload: bytes) -> bytes:
    return (struct.pack(">I", len(payload)) + tag + payload
            + struct.pack(">I", zlib.crc32(tag + payload) & 0xFFFFFFFF))


def encode_png(image: np.ndarray) -> bytes:
    """Encode an (H, W, 3) uint8 array as a non-interlaced RGB PNG."""
    if image.ndim != 3 or image.shape[2] != 3 or image.dtype != np.uint8:
        raise ValueError("expected an (H, W, 3) uint8 array")
    height, width = image.shape[:2]
    raw = b"".join(b"\x00" + image[row].tobytes() for row in range(height))
    header = struct.pack(">IIBBBBB", width, height, 8, 2, 0, 0, 0)
    return (_SIGNATURE
            + _chunk(b"IHDR", header)
            + _chunk(b"IDAT", zlib.compress(raw, 9))
            + _chunk(b"IEND", b""))


def decode_png(data: bytes) -> np.ndarray:
    """Decode an 8-bit RGB PNG (all five scanline filters supported)."""
    if data[:8] != _SIGNATURE:
        raise ValueError("not a PNG file")
    pos = 8
    width = height = None
    idat = bytearray()
    while pos < len(data):
        (length,) = struct.unpack(">I", data[pos:pos + 4])
        tag = data[pos + 4:pos + 8]
        payload = data[pos + 8:pos + 8 + length]
        pos += 12 + length
        if tag == b"IHDR":
            width, height, depth, color, _, _, interlace = \
                struct.unpack(">IIBBBBB", payload)
            if depth != 8 or color != 2 or interlace != 0:
                raise ValueError("only 8-bit non-interlaced RGB is supported")
        elif tag == b"IDAT":
            idat.extend(payload)
        elif tag == b"IEND":
            break
    if width is None:
        raise ValueError("missing IHDR")
    raw = zlib.decompress(bytes(idat))
    stride = width * 3
    out = np.zeros((height, stride), dtype=np.uint8)
    prev = np.zeros(stride, dtype=np.int32)
    pos = 0
    for row in range(height):
        filter_type = raw[pos]
        line = np.frombuffer(raw, dtype=np.uint8,
                             count=stride, offset=pos + 1).astype(np.int32)
        pos += 1 + stride
        if filter_type == 0:
            recon = line
        elif filter_type == 1:  # Sub
            recon = line.copy()
            for i in range(3, stride):
                recon[i] = (recon[i] + recon[i - 3]) & 0xFF
        elif filter_type == 2:  # Up
            recon = (line + prev) & 0xFF
        elif filter_type == 3:  # Average
            recon = line.copy()
            for i in range(stride):
                left = recon[i - 3] if i >= 3 else 0
                recon[i] = (recon[i] + ((left + prev[i]) >> 1)) & 0xFF
        elif filter_type == 4:  # Paeth
            recon = line.copy()
            for i in range(stride):
                left = recon[i - 3] if i >= 3 else 0
                up = prev[i]
                up_left = prev[i - 3] if i >= 3 else 0
                p = left + up - up_left
                pa, pb, pc = abs(p - left), abs(p - up), abs(p - up_left)
                if pa <= pb and pa <= pc:
                    pred = left
                elif pb <= pc:
                    pred = up
                else:
                    pred = up_left
                recon[i] = (recon[i] + pred) & 0xFF
        else:
            raise ValueError(f"unknown filter type {filter_type}")
        out[row] = recon.astype(np.uint8)
        prev = recon
    return out.reshape(height, width, 3)
