"""Pixel-domain reference implementation of the tunneling pipeline.

This module never touches a run-length grid.  It reads the raster pixel by
pixel, applying the same greedy rule, so its trajectories can be compared
with the compressed-domain ones and its ``pixel_reads`` with their
``grid_entries_read``.  Hub ``x`` values are pixel columns (equal to ``dist``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Optional

from ..analysis import default_merge_tolerance, resolve_over_segmentation
from ..codec import Raster
from ..counters import OpCounters
from ..exceptions import NoWhiteRunsError
from ..spotting import DEFAULT_MIN_ROWS, LEFT, TerminalNode, default_min_depth, spot_bands
from ..tunneling import INTERMEDIATE, SOURCE, TARGET, Hub, Path, SearchParams


@dataclass
class OracleResult:
    paths: list[Path]
    retained: list[Path]
    t_prime: int
    min_depth: int
    counters: OpCounters = field(default_factory=OpCounters)


def pixel_gap_threshold(raster: Raster) -> int:
    """Mode of the white-run lengths, found by scanning every pixel."""
    counts = Counter()
    for row in raster.pixels.tolist():
        run = 0
        for v in row:
            if v == 0:
                run += 1
            elif run:
                counts[run] += 1
                run = 0
        if run:
            counts[run] += 1
    if not counts:
        raise NoWhiteRunsError("raster has no background pixels")
    best = max(counts.values())
    return min(v for v, c in counts.items() if c == best)


class _PixelAgent:
    def __init__(self, raster: Raster, params: SearchParams, counters: OpCounters, memo: bool):
        self.rows = [bytes(r) for r in raster.pixels.tolist()]
        self.width = raster.width
        self.height = raster.height
        self.params = params
        self.counters = counters
        self.memo = memo
        # per row: (scan_start, run_end, colour) of the last scanned run
        self.cache: dict[int, tuple[int, int, int]] = {}

    def leading_white(self, y: int) -> int:
        row = self.rows[y - 1]
        p = 0
        while p < self.width and row[p] == 0:
            p += 1
        self.counters.pixel_reads += min(p + 1, self.width)
        return p

    def run_end(self, y: int, d: int) -> tuple[int, int]:
        """End (pixels covered) and colour of the run containing pixel ``d + 1``."""
        hit = self.cache.get(y) if self.memo else None
        if hit is not None and hit[0] <= d < hit[1]:
            self.counters.kb_hits += 1
            return hit[1], hit[2]
        self.counters.kb_misses += 1
        row = self.rows[y - 1]
        colour = row[d]
        p = d + 1
        while p < self.width and row[p] == colour:
            p += 1
        self.counters.pixel_reads += p - d + (1 if p < self.width else 0)
        if self.memo:
            self.cache[y] = (d, p, colour)
        return p, colour

    def window(self, y: int):
        t = self.params.t
        return range(max(1, y - t), min(self.height, y + t) + 1)

    @staticmethod
    def better(j, s, best, y0):
        if best is None:
            return True
        bj, bs = best
        if s != bs:
            return s > bs
        if abs(j - y0) != abs(bj - y0):
            return abs(j - y0) < abs(bj - y0)
        return j < bj

    def tunnel(self, s: TerminalNode) -> Path:
        best = None
        for j in self.window(s.y):
            cand = self.leading_white(j)
            if self.better(j, cand, best, s.y):
                best = (j, cand)
        hubs = [Hub(y=best[0], x=best[1], dist=best[1], kind=SOURCE)]
        while hubs[-1].dist < self.width:
            cur = hubs[-1]
            d = cur.dist
            white = None
            own = None
            for j in self.window(cur.y):
                end, colour = self.run_end(j, d)
                if j == cur.y:
                    own = (end, colour)
                if colour == 0 and self.better(j, end, white, cur.y):
                    white = (j, end)
            own_black = own[1] == 1
            if white is not None and (white[1] - d >= self.params.t_prime or white[1] == self.width or not own_black):
                hubs.append(Hub(y=white[0], x=white[1], dist=white[1], kind=INTERMEDIATE))
            else:
                hubs.append(Hub(y=cur.y, x=own[0], dist=own[0], kind=INTERMEDIATE, crossed=1))
        if len(hubs) > 1:
            hubs[-1] = replace(hubs[-1], kind=TARGET)
        return Path(source=s, hubs=tuple(hubs))


def oracle_segment(
    raster: Raster,
    params: Optional[SearchParams] = None,
    t: int = 20,
    min_depth: Optional[int] = None,
    min_rows: int = DEFAULT_MIN_ROWS,
    merge_tolerance: Optional[float] = None,
    memo: bool = True,
) -> OracleResult:
    """Spot sources, tunnel and resolve, all on raw pixels.

    ``params`` defaults to ``t`` with the pixel-derived gap threshold.
    """
    counters = OpCounters()
    if params is None:
        params = SearchParams(t=t, t_prime=pixel_gap_threshold(raster))
    agent = _PixelAgent(raster, params, counters, memo)
    depths = [agent.leading_white(y) for y in range(1, raster.height + 1)]
    # right-margin scan mirrors the compressed-domain target spotting cost
    for row in agent.rows:
        p = raster.width
        while p > 0 and row[p - 1] == 0:
            p -= 1
        counters.pixel_reads += min(raster.width - p + 1, raster.width)
    if min_depth is None:
        min_depth = default_min_depth(depths, params.t_prime, raster.width)
    sources = [
        TerminalNode(y=b.midpoint, side=LEFT, weight=depths[b.midpoint - 1])
        for b in spot_bands(depths, min_depth, min_rows)
    ]
    paths = [agent.tunnel(s) for s in sources]
    tol = default_merge_tolerance([s.y for s in sources], params.t_prime) if merge_tolerance is None else float(merge_tolerance)
    retained = resolve_over_segmentation(paths, params.t_prime, tol, width=raster.width)
    return OracleResult(paths=paths, retained=retained, t_prime=params.t_prime, min_depth=min_depth, counters=counters)
