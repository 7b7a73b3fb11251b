"""Read-only queries over a :class:`~rletunnel.codec.Grid`.

Positions are 1-based: ``y`` is the row, ``x`` the run column.  Odd ``x``
holds white runs, even ``x`` black runs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .codec import Grid
from .exceptions import NoWhiteRunsError

WHITE = "white"
BLACK = "black"


class GridPosition(NamedTuple):
    y: int
    x: int


def _check_pos(grid: Grid, y: int, x: int) -> None:
    if not (1 <= y <= grid.height and 1 <= x <= grid.n_cols):
        raise IndexError(f"position (y={y}, x={x}) outside grid of shape {grid.height}x{grid.n_cols}")


def run_color(x: int) -> str:
    return WHITE if x % 2 == 1 else BLACK


def run_at(grid: Grid, pos) -> tuple[str, int]:
    """Color and stored length of the entry at ``pos``."""
    y, x = pos
    _check_pos(grid, y, x)
    return run_color(x), int(grid.runs[y - 1, x - 1])


def cumulative_distance(grid: Grid, y: int, x: int) -> int:
    """Pixels covered after consuming the first ``x`` runs of row ``y``."""
    _check_pos(grid, y, x)
    return int(grid.runs[y - 1, :x].sum())


@dataclass(frozen=True)
class VirtualColumn:
    """Final non-zero entry of each row, standing in for the right margin.

    ``xs`` and ``lengths`` are per-row arrays (index 0 is row 1).
    """

    xs: np.ndarray
    lengths: np.ndarray

    def __len__(self):
        return len(self.xs)

    def __getitem__(self, y: int) -> tuple[int, int]:
        return int(self.xs[y - 1]), int(self.lengths[y - 1])

    @property
    def depths(self) -> np.ndarray:
        """Right-margin white depth per row; 0 where the row ends in ink."""
        return np.where(self.xs % 2 == 1, self.lengths, 0)


def virtual_column(grid: Grid) -> VirtualColumn:
    xs = np.empty(grid.height, dtype=np.int64)
    lengths = np.empty(grid.height, dtype=np.int64)
    for j in range(grid.height):
        n = grid.row_length(j + 1)
        xs[j] = n
        lengths[j] = grid.runs[j, n - 1]
    return VirtualColumn(xs, lengths)


def white_run_histogram(grid: Grid) -> dict[int, int]:
    """Counts of every non-zero white-run length, keyed by length, ascending."""
    odd = grid.runs[:, 0::2]
    values = odd[odd > 0]
    counts = Counter(values.tolist())
    return dict(sorted(counts.items()))


def gap_threshold(grid: Grid) -> int:
    """The most frequent white-run length (ties toward the smaller length)."""
    hist = white_run_histogram(grid)
    if not hist:
        raise NoWhiteRunsError("grid has no non-zero white runs")
    best = max(hist.values())
    return min(v for v, c in hist.items() if c == best)
