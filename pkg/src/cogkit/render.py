"""Deterministic rasterization of symbolic frames into RGB images.

Integer-only geometry and an embedded bitmap font keep output pixels
identical across platforms; no anti-aliasing, no text engine.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .font5x7 import GLYPHS_5X7
from .types import COLORS, Frame, SHAPES

#: RGB value per color name; all pairwise distinct and distinct from the
#: black background.
PALETTE: dict[str, tuple[int, int, int]] = {
    "red": (230, 25, 75),
    "green": (60, 180, 75),
    "blue": (67, 99, 216),
    "yellow": (255, 225, 25),
    "purple": (145, 30, 180),
    "orange": (245, 130, 48),
    "cyan": (66, 212, 244),
    "magenta": (240, 50, 230),
    "lime": (191, 239, 69),
    "pink": (250, 190, 212),
    "teal": (70, 153, 144),
    "lavender": (220, 190, 255),
    "brown": (154, 99, 36),
    "beige": (255, 250, 200),
    "maroon": (128, 0, 0),
    "mint": (170, 255, 195),
    "olive": (128, 128, 0),
    "coral": (255, 127, 80),
    "navy": (0, 0, 117),
}

BACKGROUND = (0, 0, 0)

assert set(PALETTE) == set(COLORS)


@lru_cache(maxsize=256)
def glyph(shape: str, box: int) -> np.ndarray:
    """Boolean (box, box) mask for one shape."""
    if box < 8:
        raise ValueError("glyph box must be at least 8 pixels")
    if shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}")

    if shape in GLYPHS_5X7:
        return _letter_mask(shape, box)

    mask = np.zeros((box, box), dtype=bool)
    center = (box - 1) / 2.0
    yy, xx = np.mgrid[0:box, 0:box]
    if shape == "circle":
        radius = 0.46 * box
        mask = (xx - center) ** 2 + (yy - center) ** 2 <= radius ** 2
    elif shape == "square":
        margin = int(round(0.08 * box))
        mask[margin:box - margin, margin:box - margin] = True
    elif shape == "triangle":
        # Upward triangle: apex on the top row, base along the bottom.
        height = box - 1
        half = 0.48 * box * (yy / height)
        mask = np.abs(xx - center) <= half
        mask &= yy >= int(round(0.04 * box))
    elif shape == "cross":
        thickness = 0.15 * box
        margin = int(round(0.08 * box))
        bar_v = np.abs(xx - center) <= thickness
        bar_h = np.abs(yy - center) <= thickness
        mask = bar_v | bar_h
        mask &= (xx >= margin) & (xx < box - margin)
        mask &= (yy >= margin) & (yy < box - margin)
    elif shape == "vbar":
        thickness = 0.14 * box
        margin = int(round(0.08 * box))
        mask = np.abs(xx - center) <= thickness
        mask &= (yy >= margin) & (yy < box - margin)
    elif shape == "hbar":
        thickness = 0.14 * box
        margin = int(round(0.08 * box))
        mask = np.abs(yy - center) <= thickness
        mask &= (xx >= margin) & (xx < box - margin)
    else:
        raise AssertionError(shape)
    mask.setflags(write=False)
    return mask


def _letter_mask(shape: str, box: int) -> np.ndarray:
    rows = GLYPHS_5X7[shape]
    base = np.array([[cell == "#" for cell in row] for row in rows], dtype=bool)
    # Nearest-neighbour scale: letters keep their 5:7 aspect inside the box.
    scale = max(1, box // 7)
    scaled = np.repeat(np.repeat(base, scale, axis=0), scale, axis=1)
    mask = np.zeros((box, box), dtype=bool)
    off_y = (box - scaled.shape[0]) // 2
    off_x = (box - scaled.shape[1]) // 2
    mask[off_y:off_y + scaled.shape[0], off_x:off_x + scaled.shape[1]] = scaled
    mask.setflags(write=False)
    return mask


def rasterize_frame(frame: Frame, canvas: int = 112) -> np.ndarray:
    """Render one frame to a (canvas, canvas, 3) uint8 array.

    Objects are filled glyphs centered at (x * canvas, y * canvas) in a
    canvas/4 box; later-listed objects draw over earlier ones.
    """
    image = np.zeros((canvas, canvas, 3), dtype=np.uint8)
    box = canvas // 4
    for obj in frame.objects:
        mask = glyph(obj.shape, box)
        cx = int(round(obj.loc.x * canvas))
        cy = int(round(obj.loc.y * canvas))
        x0, y0 = cx - box // 2, cy - box // 2
        # Clip to the canvas.
        sx0, sy0 = max(0, -x0), max(0, -y0)
        dx0, dy0 = max(0, x0), max(0, y0)
        dx1 = min(canvas, x0 + box)
        dy1 = min(canvas, y0 + box)
        if dx1 <= dx0 or dy1 <= dy0:
            continue
        view = mask[sy0:sy0 + (dy1 - dy0), sx0:sx0 + (dx1 - dx0)]
        image[dy0:dy1, dx0:dx1][view] = PALETTE[obj.color]
    return image


def render_episode(frames: list[Frame], canvas: int = 112) -> list[np.ndarray]:
    return [rasterize_frame(frame, canvas) for frame in frames]


def contact_sheet(frames: list[Frame], canvas: int = 112,
                  gap: int = 2) -> np.ndarray:
    """All frames side by side with a thin separator, for previews."""
    images = render_episode(frames, canvas)
    width = len(images) * canvas + (len(images) - 1) * gap
    sheet = np.zeros((canvas, width, 3), dtype=np.uint8)
    sheet[:, :, :] = 32  # separator gray, overwritten by the frames
    for i, image in enumerate(images):
        x0 = i * (canvas + gap)
        sheet[:, x0:x0 + canvas] = image
    return sheet
