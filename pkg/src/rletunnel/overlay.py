"""Colour rendering of paths over the document ink."""

from __future__ import annotations

import numpy as np

from .codec import Raster

PALETTE = np.array(
    [
        (230, 25, 75),
        (60, 180, 75),
        (0, 130, 200),
        (245, 130, 48),
        (145, 30, 180),
        (70, 240, 240),
        (240, 50, 230),
        (210, 245, 60),
        (0, 128, 128),
        (170, 110, 40),
    ],
    dtype=np.uint8,
)


def render_overlay(raster: Raster, paths, hub_size: int = 3) -> np.ndarray:
    """RGB image: ink in black, path ``k`` in ``PALETTE[k % 10]``, hubs as filled squares."""
    h, w = raster.height, raster.width
    rgb = np.full((h, w, 3), 255, dtype=np.uint8)
    rgb[raster.pixels == 1] = 0
    half = hub_size // 2
    for k, path in enumerate(paths):
        colour = PALETTE[k % len(PALETTE)]
        start = 0
        prev_y = path.hubs[0].y
        for hub in path.hubs:
            y0, y1 = sorted((prev_y, hub.y))
            col = min(max(start, 1), w) - 1
            rgb[y0 - 1 : y1, col] = colour
            rgb[hub.y - 1, start : hub.dist] = colour
            start, prev_y = hub.dist, hub.y
        for hub in path.hubs:
            cy, cx = hub.y - 1, min(max(hub.dist, 1), w) - 1
            rgb[max(0, cy - half) : cy + half + 1, max(0, cx - half) : cx + half + 1] = colour
    return rgb
