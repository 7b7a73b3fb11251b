"""End-to-end segmentation of one document in the compressed domain."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .analysis import Correspondence, build_correspondence, default_merge_tolerance, resolve_over_segmentation, row_labels
from .codec import Grid
from .counters import OpCounters
from .grid import gap_threshold
from .spotting import DEFAULT_MIN_ROWS, LEFT, TerminalNode, default_min_depth, source_depths, spot_bands, spot_targets
from .tunneling import DEFAULT_T, KnowledgeBase, Path, SearchParams, tunnel_all


@dataclass
class SegmentationReport:
    width: int
    height: int
    t: int
    t_prime: int
    min_depth: int
    min_rows: int
    merge_tolerance: float
    sources: list[TerminalNode]
    targets: list[TerminalNode]
    paths: list[Path]
    retained: list[Path]
    row_labels: list[int]
    correspondence: Correspondence
    counters: OpCounters = field(default_factory=OpCounters)


def resolve_params(grid: Grid, t: int = DEFAULT_T, t_prime="auto", min_depth=None, merge_tolerance=None):
    """Materialise ``auto`` settings; the merge tolerance stays ``None`` until sources are known."""
    tp = gap_threshold(grid) if t_prime in (None, "auto") else int(t_prime)
    depth = default_min_depth(source_depths(grid), tp, grid.width) if min_depth is None else int(min_depth)
    tol = None if merge_tolerance is None else float(merge_tolerance)
    return SearchParams(t=int(t), t_prime=tp), depth, tol


def segment(
    grid: Grid,
    t: int = DEFAULT_T,
    t_prime="auto",
    min_depth: Optional[int] = None,
    min_rows: int = DEFAULT_MIN_ROWS,
    merge_tolerance: Optional[float] = None,
    use_kb: bool = True,
) -> SegmentationReport:
    params, depth, tol = resolve_params(grid, t, t_prime, min_depth, merge_tolerance)
    counters = OpCounters()
    values = source_depths(grid)
    counters.grid_entries_read += grid.height
    sources = [
        TerminalNode(y=b.midpoint, side=LEFT, weight=int(values[b.midpoint - 1]))
        for b in spot_bands(values, depth, min_rows)
    ]
    if tol is None:
        tol = default_merge_tolerance([s.y for s in sources], params.t_prime)
    targets = spot_targets(grid, min_rows=min_rows, t_prime=params.t_prime)
    counters.grid_entries_read += grid.height
    kb = KnowledgeBase(grid.height, enabled=use_kb)
    paths = tunnel_all(grid, sources, params, kb=kb, counters=counters)
    retained = resolve_over_segmentation(paths, params.t_prime, tol, width=grid.width)
    return SegmentationReport(
        width=grid.width,
        height=grid.height,
        t=params.t,
        t_prime=params.t_prime,
        min_depth=depth,
        min_rows=min_rows,
        merge_tolerance=tol,
        sources=sources,
        targets=targets,
        paths=paths,
        retained=retained,
        row_labels=row_labels(retained, grid.height, grid.width),
        correspondence=build_correspondence(retained),
        counters=counters,
    )
