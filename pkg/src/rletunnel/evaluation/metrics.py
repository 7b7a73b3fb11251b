"""Detection rate, recognition accuracy, and the path/ground-truth matcher."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from ..analysis import path_polyline
from ..exceptions import InvalidInputError, UndefinedMetricError
from ..tunneling import Path


def detection_rate(o2o: int, n: int) -> float:
    """``o2o / N``: matched results over ground-truth elements."""
    if n <= 0:
        raise UndefinedMetricError("detection rate undefined for N = 0")
    if not 0 <= o2o <= n:
        raise InvalidInputError(f"o2o must lie in [0, N], got o2o={o2o}, N={n}")
    return o2o / n


def recognition_accuracy(o2o: int, m: int) -> float:
    """``o2o / M``: matched results over result elements."""
    if m <= 0:
        raise UndefinedMetricError("recognition accuracy undefined for M = 0")
    if not 0 <= o2o <= m:
        raise InvalidInputError(f"o2o must lie in [0, M], got o2o={o2o}, M={m}")
    return o2o / m


@dataclass(frozen=True)
class EvalResult:
    o2o: int
    N: int
    M: int
    DR: float
    RA: float

    @classmethod
    def from_counts(cls, o2o: int, n: int, m: int) -> "EvalResult":
        ra = recognition_accuracy(o2o, m) if m else 0.0
        return cls(o2o=o2o, N=n, M=m, DR=detection_rate(o2o, n), RA=ra)

    def as_dict(self) -> dict:
        return asdict(self)


def mean_deviation(path: Path, polyline: np.ndarray) -> float:
    """Mean absolute vertical distance between a path and a ground-truth polyline."""
    width = len(polyline)
    return float(np.mean(np.abs(path_polyline(path, width) - polyline)))


def match_paths(paths: Sequence[Path], gt, match_tolerance: Optional[float] = None) -> int:
    """Count order-preserving one-to-one matches between paths and ground-truth gaps.

    Ground-truth gaps are visited top to bottom; each takes the closest
    not-yet-used path below the previous match whose mean deviation is within
    ``match_tolerance`` (default: half the median gap height).
    """
    if match_tolerance is None:
        match_tolerance = gt.default_match_tolerance
    if match_tolerance < 0:
        raise InvalidInputError("match tolerance must be non-negative")
    ordered = sorted(paths, key=lambda p: float(np.mean(path_polyline(p, gt.width))))
    o2o = 0
    start = 0
    for line in gt.gap_polylines:
        best = None
        for i in range(start, len(ordered)):
            dev = mean_deviation(ordered[i], line)
            if dev <= match_tolerance and (best is None or dev < best[1]):
                best = (i, dev)
        if best is not None:
            o2o += 1
            start = best[0] + 1
    return o2o


def evaluate(paths: Sequence[Path], gt, match_tolerance: Optional[float] = None) -> EvalResult:
    o2o = match_paths(paths, gt, match_tolerance)
    return EvalResult.from_counts(o2o, gt.gap_count, len(paths))
