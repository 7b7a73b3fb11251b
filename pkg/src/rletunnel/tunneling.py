"""The tunneling agent.

Starting from a spotted source, the agent hops from hub to hub towards the
right margin.  At every step it looks at the rows within ``±t`` of its
current row and, for each, finds the run that covers the first pixel past
the current distance, i.e. the first cumulative sum that exceeds it.  The
row whose white run reaches furthest wins.  When every white continuation
inside the window advances by less than ``t_prime`` pixels the agent cuts
through the black run directly ahead of it on its own row instead.

Per-row cumulative sums are memoised in a :class:`KnowledgeBase` so that a
row revisited by a later step resumes where it stopped.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .codec import Grid
from .counters import OpCounters
from .exceptions import InvalidInputError, StuckError
from .spotting import TerminalNode

DEFAULT_T = 20

SOURCE = "source"
INTERMEDIATE = "intermediate"
TARGET = "target"


@dataclass(frozen=True)
class SearchParams:
    """Vertical half-window ``t`` (rows) and gap threshold ``t_prime`` (pixels)."""

    t: int = DEFAULT_T
    t_prime: int = 1

    def __post_init__(self):
        if self.t < 1 or self.t_prime < 1:
            raise InvalidInputError(f"t and t_prime must be >= 1, got t={self.t}, t_prime={self.t_prime}")


@dataclass(frozen=True)
class Hub:
    y: int
    x: int
    dist: int
    kind: str = INTERMEDIATE
    crossed: int = 0

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.y, self.x, self.dist)


@dataclass(frozen=True)
class Path:
    source: TerminalNode
    hubs: tuple[Hub, ...]

    @property
    def total_crossovers(self) -> int:
        return sum(h.crossed for h in self.hubs)

    @property
    def reached_y(self) -> int:
        return self.hubs[-1].y

    @property
    def final_dist(self) -> int:
        return self.hubs[-1].dist

    def trajectory(self) -> list[tuple[int, int]]:
        """``(y, dist)`` per hub; the domain-independent part of a path."""
        return [(h.y, h.dist) for h in self.hubs]

    def __len__(self):
        return len(self.hubs)


class KnowledgeBase:
    """Per-row memo of the last cumulative sum computed in that row.

    An entry is ``(x, total, before)``: after consuming ``x`` runs the row
    covers ``total`` pixels, and ``before`` pixels before run ``x``.  The
    entry answers a query for distance ``d`` directly when
    ``before <= d < total`` and is a valid starting point when
    ``total <= d``.  With ``enabled=False`` nothing is remembered.
    """

    def __init__(self, height: int, enabled: bool = True):
        self.height = height
        self.enabled = enabled
        self._x = [0] * height
        self._total = [0] * height
        self._before = [0] * height

    def get(self, y: int):
        if not self.enabled or self._x[y - 1] == 0:
            return None
        j = y - 1
        return self._x[j], self._total[j], self._before[j]

    def put(self, y: int, x: int, total: int, before: int) -> None:
        if self.enabled:
            j = y - 1
            self._x[j] = x
            self._total[j] = total
            self._before[j] = before

    def clear(self) -> None:
        self._x = [0] * self.height
        self._total = [0] * self.height
        self._before = [0] * self.height

    def __len__(self):
        return sum(1 for x in self._x if x)


def _window(y: int, t: int, height: int) -> range:
    return range(max(1, y - t), min(height, y + t) + 1)


def _prefer(cand, best, y0):
    """True when candidate ``(row, total)`` beats ``best``: further, then nearer, then higher."""
    if best is None:
        return True
    j, s = cand
    bj, bs = best
    if s != bs:
        return s > bs
    if abs(j - y0) != abs(bj - y0):
        return abs(j - y0) < abs(bj - y0)
    return j < bj


class _Walker:
    """Bundles the grid rows, knowledge base and counters for one document."""

    def __init__(self, grid: Grid, kb: Optional[KnowledgeBase], counters: Optional[OpCounters]):
        self.grid = grid
        self.rows = grid.row_lists
        self.kb = kb if kb is not None else KnowledgeBase(grid.height)
        self.counters = counters if counters is not None else OpCounters()

    def column_one(self, y: int) -> int:
        entry = self.kb.get(y)
        if entry is not None and entry[0] == 1:
            self.counters.kb_hits += 1
            return entry[1]
        self.counters.kb_misses += 1
        self.counters.grid_entries_read += 1
        v = self.rows[y - 1][0]
        if v > 0 and entry is None:
            self.kb.put(y, 1, v, 0)
        return v

    def landing(self, y: int, d: int) -> tuple[int, int]:
        """Column and cumulative sum of the run in row ``y`` covering pixel ``d + 1``."""
        entry = self.kb.get(y)
        if entry is not None and entry[2] <= d:
            self.counters.kb_hits += 1
            x, total, before = entry
            if total > d:
                return x, total
        else:
            self.counters.kb_misses += 1
            x, total, before = 0, 0, 0
        row = self.rows[y - 1]
        reads = 0
        while total <= d:
            v = row[x]
            x += 1
            reads += 1
            if v:
                before = total
                total += v
        self.counters.grid_entries_read += reads
        self.kb.put(y, x, total, before)
        return x, total


def refine_source(
    grid: Grid,
    s: TerminalNode,
    params: SearchParams,
    kb: Optional[KnowledgeBase] = None,
    counters: Optional[OpCounters] = None,
) -> Hub:
    """Move the source to the longest left-margin white run within ``±t`` rows.

    Ties go to the row nearest ``s.y``, then to the smaller row.
    """
    return _refine(_Walker(grid, kb, counters), s, params)


def _refine(walker: _Walker, s: TerminalNode, params: SearchParams) -> Hub:
    best = None
    for j in _window(s.y, params.t, walker.grid.height):
        cand = (j, walker.column_one(j))
        if _prefer(cand, best, s.y):
            best = cand
    return Hub(y=best[0], x=1, dist=best[1], kind=SOURCE)


def next_hub(
    grid: Grid,
    current: Hub,
    params: SearchParams,
    kb: Optional[KnowledgeBase] = None,
    counters: Optional[OpCounters] = None,
) -> Hub:
    """One greedy step from ``current``; see the module docstring for the rule."""
    if current.dist >= grid.width:
        raise InvalidInputError(f"hub at dist {current.dist} already reached the right margin")
    return _step(_Walker(grid, kb, counters), current, params)


def _step(walker: _Walker, current: Hub, params: SearchParams) -> Hub:
    d = current.dist
    width = walker.grid.width
    best_white = None
    best_white_x = 0
    own = None
    for j in _window(current.y, params.t, walker.grid.height):
        x, total = walker.landing(j, d)
        if j == current.y:
            own = (x, total)
        if x % 2 == 1 and _prefer((j, total), best_white, current.y):
            best_white = (j, total)
            best_white_x = x
    own_is_black = own[0] % 2 == 0
    if best_white is not None and (
        best_white[1] - d >= params.t_prime or best_white[1] == width or not own_is_black
    ):
        hub = Hub(y=best_white[0], x=best_white_x, dist=best_white[1])
    elif own_is_black:
        hub = Hub(y=current.y, x=own[0], dist=own[1], crossed=1)
    else:  # pragma: no cover - the own row always offers a landing
        raise StuckError(f"no progress possible past dist {d} at row {current.y}", source_y=current.y)
    if hub.dist <= d:  # pragma: no cover - guards against a corrupt knowledge base
        raise StuckError(f"non-increasing hub distance at row {current.y}", source_y=current.y)
    return hub


def tunnel(
    grid: Grid,
    s: TerminalNode,
    params: SearchParams,
    kb: Optional[KnowledgeBase] = None,
    counters: Optional[OpCounters] = None,
) -> Path:
    """Trace a full path from source ``s`` to the right margin."""
    walker = _Walker(grid, kb, counters)
    hubs = [_refine(walker, s, params)]
    limit = grid.height * grid.n_cols + 1
    while hubs[-1].dist < grid.width:
        if len(hubs) > limit:  # pragma: no cover
            raise StuckError("step limit exceeded", source_y=s.y, partial_path=Path(s, tuple(hubs)))
        try:
            hubs.append(_step(walker, hubs[-1], params))
        except StuckError as exc:
            exc.source_y = s.y
            exc.partial_path = Path(s, tuple(hubs))
            raise
    if len(hubs) > 1:
        hubs[-1] = replace(hubs[-1], kind=TARGET)
    return Path(source=s, hubs=tuple(hubs))


def tunnel_all(
    grid: Grid,
    sources,
    params: SearchParams,
    kb: Optional[KnowledgeBase] = None,
    counters: Optional[OpCounters] = None,
) -> list[Path]:
    """Tunnel every source in order, sharing one knowledge base across the document."""
    if kb is None:
        kb = KnowledgeBase(grid.height)
    return [tunnel(grid, s, params, kb=kb, counters=counters) for s in sources]
