"""Per-page drivers shared by the CLI and the acceptance suite."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from ..codec import Raster, encode
from ..pipeline import SegmentationReport, segment
from ..tunneling import SearchParams
from .metrics import EvalResult, evaluate
from .oracle import OracleResult, oracle_segment


@dataclass
class Comparison:
    report: SegmentationReport
    oracle: OracleResult

    @property
    def same_paths(self) -> bool:
        return [p.trajectory() for p in self.report.paths] == [p.trajectory() for p in self.oracle.paths]

    @property
    def same_retained(self) -> bool:
        return [p.trajectory() for p in self.report.retained] == [p.trajectory() for p in self.oracle.retained]


def compare_with_oracle(raster: Raster, t: int, use_kb: bool = True, **kwargs) -> Comparison:
    """Segment ``raster`` in both domains with independently derived settings."""
    report = segment(encode(raster), t=t, use_kb=use_kb, **kwargs)
    oracle = oracle_segment(raster, t=t, memo=use_kb, **kwargs)
    return Comparison(report, oracle)


def evaluate_page(raster: Raster, gt, t: int, match_tolerance: Optional[float] = None, **kwargs) -> dict:
    report = segment(encode(raster), t=t, **kwargs)
    res: EvalResult = evaluate(report.retained, gt, match_tolerance)
    row = res.as_dict()
    row.update(
        paths=len(report.paths),
        retained=len(report.retained),
        t_prime=report.t_prime,
        **report.counters.as_dict(),
    )
    return row


def bench_page(raster: Raster, t: int, **kwargs) -> dict:
    """Counters and wall time for the compressed pipeline (encoding excluded) and the oracle."""
    grid = encode(raster)
    t0 = time.perf_counter()
    report = segment(grid, t=t, **kwargs)
    t1 = time.perf_counter()
    oracle = oracle_segment(raster, SearchParams(t=t, t_prime=report.t_prime), min_depth=report.min_depth, **kwargs)
    t2 = time.perf_counter()
    return {
        "grid_entries_read": report.counters.grid_entries_read,
        "pixel_reads": oracle.counters.pixel_reads,
        "compressed_ms": round((t1 - t0) * 1000, 3),
        "uncompressed_ms": round((t2 - t1) * 1000, 3),
    }
