"""Separator terminal spotting at the two document margins.

Sources come from grid column 1 (the left-margin white run of each row);
targets come from the virtual column (the trailing white run).  A band is a
maximal stretch of consecutive rows whose depth reaches ``min_depth`` and
which is at least ``min_rows`` tall; each band contributes its midpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .codec import Grid
from .grid import gap_threshold, virtual_column

LEFT = "left"
RIGHT = "right"

DEFAULT_MIN_ROWS = 3


@dataclass(frozen=True)
class Band:
    y_start: int
    y_end: int
    depth: int

    @property
    def midpoint(self) -> int:
        # even-height bands round toward y_start
        return (self.y_start + self.y_end) // 2

    def __len__(self):
        return self.y_end - self.y_start + 1


@dataclass(frozen=True)
class TerminalNode:
    y: int
    side: str
    weight: int


def spot_bands(column_values: Sequence[int], min_depth: int, min_rows: int = DEFAULT_MIN_ROWS) -> list[Band]:
    """Maximal runs of rows with ``value >= min_depth`` spanning ``>= min_rows`` rows."""
    bands = []
    start = None
    values = [int(v) for v in column_values]
    for j, v in enumerate(values + [None], start=1):
        ok = v is not None and v >= min_depth
        if ok and start is None:
            start = j
        elif not ok and start is not None:
            if j - start >= min_rows:
                bands.append(Band(start, j - 1, min(values[start - 1 : j - 1])))
            start = None
    return bands


def default_min_depth(column_values: Sequence[int], t_prime: int, width: int) -> int:
    """Band depth threshold used when none is given.

    Text rows start at the (possibly indented) margin, so the lower quartile
    of the column approximates the margin; a gap row must clear it by twice
    the dominant white-run length.  Capped at ``width`` so that full-width
    blank rows always qualify.
    """
    base = float(np.percentile(np.asarray(column_values, dtype=float), 25))
    return int(min(width, int(base) + 2 * t_prime))


def _nodes(values, side, min_depth, min_rows):
    return [
        TerminalNode(y=b.midpoint, side=side, weight=int(values[b.midpoint - 1]))
        for b in spot_bands(values, min_depth, min_rows)
    ]


def source_depths(grid: Grid) -> np.ndarray:
    return grid.runs[:, 0].copy()


def target_depths(grid: Grid) -> np.ndarray:
    return virtual_column(grid).depths


def spot_sources(
    grid: Grid,
    min_depth: Optional[int] = None,
    min_rows: int = DEFAULT_MIN_ROWS,
    t_prime: Optional[int] = None,
) -> list[TerminalNode]:
    """Left-margin separator points, ascending in ``y``."""
    values = source_depths(grid)
    if min_depth is None:
        min_depth = default_min_depth(values, t_prime or gap_threshold(grid), grid.width)
    return _nodes(values, LEFT, min_depth, min_rows)


def spot_targets(
    grid: Grid,
    min_depth: Optional[int] = None,
    min_rows: int = DEFAULT_MIN_ROWS,
    t_prime: Optional[int] = None,
) -> list[TerminalNode]:
    """Right-margin separator points taken from the virtual column."""
    values = target_depths(grid)
    if min_depth is None:
        min_depth = default_min_depth(values, t_prime or gap_threshold(grid), grid.width)
    return _nodes(values, RIGHT, min_depth, min_rows)
