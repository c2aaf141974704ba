"""Decoder for the dataset's PNG images (8-bit RGB, non-interlaced).

Self-contained so the client depends only on the documented file format,
not on the producing library.
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

from .errors import FormatError

_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def decode_png(data: bytes) -> np.ndarray:
    if data[:8] != _SIGNATURE:
        raise FormatError("not a PNG file")
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
                raise FormatError("only 8-bit non-interlaced RGB is supported")
        elif tag == b"IDAT":
            idat.extend(payload)
        elif tag == b"IEND":
            break
    if width is None:
        raise FormatError("missing IHDR chunk")
    raw = zlib.decompress(bytes(idat))
    stride = width * 3
    rows = np.zeros((height, stride), dtype=np.uint8)
    prev = np.zeros(stride, dtype=np.int32)
    pos = 0
    for row in range(height):
        filter_type = raw[pos]
        line = np.frombuffer(raw, dtype=np.uint8,
                             count=stride, offset=pos + 1).astype(np.int32)
        pos += 1 + stride
        if filter_type == 0:
            recon = line
        elif filter_type == 1:
            recon = line.copy()
            for i in range(3, stride):
                recon[i] = (recon[i] + recon[i - 3]) & 0xFF
        elif filter_type == 2:
            recon = (line + prev) & 0xFF
        elif filter_type == 3:
            recon = line.copy()
            for i in range(stride):
                left = recon[i - 3] if i >= 3 else 0
                recon[i] = (recon[i] + ((left + prev[i]) >> 1)) & 0xFF
        elif filter_type == 4:
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
            raise FormatError(f"unknown scanline filter {filter_type}")
        rows[row] = recon.astype(np.uint8)
        prev = recon
    return rows.reshape(height, width, 3)
