"""Post-processing of tunneled paths.

Covers source/target correspondence, the sampled mean vertical gap ``r``
between two paths, removal of converging duplicates produced by
over-segmentation, and the per-row line labelling derived from the retained
paths.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .exceptions import DegenerateIntervalError, InvalidInputError
from .tunneling import Path


@dataclass(frozen=True)
class PathDistance:
    r: float
    n: int


@dataclass(frozen=True)
class Correspondence:
    """``pairs`` maps each source row to the target row it reached (``None`` if unmatched)."""

    pairs: tuple[tuple[int, Optional[int]], ...]
    order_preserving: bool

    @property
    def valid(self) -> bool:
        """Order preserving, with unmatched sources allowed only at the end."""
        if not self.order_preserving:
            return False
        seen_empty = False
        for _, t in self.pairs:
            if t is None:
                seen_empty = True
            elif seen_empty:
                return False
        return True


def path_width(path: Path) -> int:
    return path.final_dist


def _n_windows(width: int, interval: int) -> int:
    return math.ceil(width / interval)


def sample_path(path: Path, interval: int, width: Optional[int] = None) -> list[int]:
    """Row of the path in every ``interval``-pixel window along the x axis.

    Each window reports the last hub whose distance falls inside it; empty
    windows repeat the previous value, starting from the first hub's row.
    """
    if interval < 1:
        raise InvalidInputError(f"interval must be >= 1, got {interval}")
    width = path_width(path) if width is None else width
    samples = []
    y = path.hubs[0].y
    hubs = iter(path.hubs)
    pending = next(hubs, None)
    for k in range(_n_windows(width, interval)):
        hi = (k + 1) * interval
        while pending is not None and pending.dist <= hi:
            y = pending.y
            pending = next(hubs, None)
        samples.append(y)
    return samples


def path_distance(p1: Path, p2: Path, interval: int, width: Optional[int] = None) -> PathDistance:
    """Mean signed vertical gap ``sum(u - v) / n`` between two sampled paths."""
    if width is None:
        width = max(path_width(p1), path_width(p2))
    u = sample_path(p1, interval, width)
    v = sample_path(p2, interval, width)
    n = len(u)
    if n == 0:
        raise DegenerateIntervalError("no samples for the given interval")
    return PathDistance(r=sum(a - b for a, b in zip(u, v)) / n, n=n)


def path_polyline(path: Path, width: Optional[int] = None) -> np.ndarray:
    """Row occupied by the path at every pixel column ``1..width``.

    The agent reaches a hub's row at its predecessor's distance and then runs
    along that row up to the hub's own distance.
    """
    width = path_width(path) if width is None else width
    dists = np.array([h.dist for h in path.hubs])
    ys = np.array([h.y for h in path.hubs])
    idx = np.searchsorted(dists, np.arange(1, width + 1), side="left")
    return ys[np.minimum(idx, len(ys) - 1)]


def build_correspondence(
    paths: Sequence[Path],
    targets=None,
    tolerance: Optional[float] = None,
) -> Correspondence:
    """Pair every path's source row with the row it reached.

    Without ``targets`` the final hub row is the reached target.  With a list
    of spotted target nodes, each final row snaps to the nearest target within
    ``tolerance`` rows (``None`` when none is close enough or the target is
    already taken).
    """
    pairs = []
    if targets is None:
        pairs = [(p.source.y, p.reached_y) for p in paths]
    else:
        tys = sorted(t.y for t in targets)
        taken = set()
        for p in paths:
            best = None
            for ty in tys:
                gap = abs(ty - p.reached_y)
                if (tolerance is None or gap <= tolerance) and ty not in taken and (best is None or gap < abs(best - p.reached_y)):
                    best = ty
            if best is not None:
                taken.add(best)
            pairs.append((p.source.y, best))
    reached = [t for _, t in pairs if t is not None]
    ordered = all(a < b for a, b in zip(reached, reached[1:]))
    return Correspondence(pairs=tuple(pairs), order_preserving=ordered)


def default_merge_tolerance(source_rows: Sequence[int], t_prime: int) -> float:
    """Half the median spacing of adjacent sources, never below ``t_prime``.

    Genuine neighbours sit about one line pitch apart, duplicates from an
    over-segmented gap much closer, so half the typical spacing separates them.
    """
    ys = sorted(source_rows)
    if len(ys) < 2:
        return float(t_prime)
    return max(float(t_prime), float(np.median(np.diff(ys))) / 2)


def _gap_spread(a: Path, b: Path, interval: int, width: int) -> float:
    u = np.array(sample_path(a, interval, width))
    v = np.array(sample_path(b, interval, width))
    return float(np.std(u - v))


def resolve_over_segmentation(
    paths: Sequence[Path],
    interval: int,
    merge_tolerance: float,
    width: Optional[int] = None,
) -> list[Path]:
    """Drop converging duplicates until no adjacent pair converges.

    Two neighbouring paths converge when ``|r| < merge_tolerance``.  The one
    with more hubs goes; on equal hub counts the one whose gap to its other
    neighbour fluctuates more goes.  Averaging along the whole path keeps a
    pair that only meets at one margin (a short last line) apart.
    """
    kept = sorted(paths, key=lambda p: (p.source.y, p.hubs[0].y))
    if width is None:
        width = max((path_width(p) for p in kept), default=0)
    changed = True
    while changed:
        changed = False
        for i in range(len(kept) - 1):
            a, b = kept[i], kept[i + 1]
            if abs(path_distance(a, b, interval, width).r) >= merge_tolerance:
                continue
            if len(a) != len(b):
                drop = i if len(a) > len(b) else i + 1
            else:
                spread_a = _gap_spread(a, kept[i - 1], interval, width) if i > 0 else 0.0
                spread_b = _gap_spread(b, kept[i + 2], interval, width) if i + 2 < len(kept) else 0.0
                drop = i if spread_a > spread_b else i + 1
            del kept[drop]
            changed = True
            break
    return kept


def row_labels(paths: Sequence[Path], height: int, width: int) -> list[int]:
    """Line index per row: rows between retained path ``k`` and ``k+1`` get ``k``.

    Paths are read at the horizontal midline of the page; rows above the first
    path are labelled 0.
    """
    mid = (width + 1) // 2
    ys = sorted(int(path_polyline(p, width)[mid - 1]) for p in paths)
    return [bisect.bisect_right(ys, y) for y in range(1, height + 1)]
