"""Text-line segmentation of binary document images in the run-length domain."""

from .analysis import (
    build_correspondence,
    path_distance,
    path_polyline,
    resolve_over_segmentation,
    row_labels,
    sample_path,
)
from .codec import Grid, Raster, decode, encode, load_grid, load_raster, read_pbm, read_rleg, write_pbm, write_rleg
from .counters import OpCounters
from .estimator import RunLengthEncoder, TunnelingSegmenter
from .exceptions import (
    CorruptGridError,
    DegenerateIntervalError,
    InvalidInputError,
    InvalidSpecError,
    NoWhiteRunsError,
    RLETunnelError,
    StuckError,
    UndefinedMetricError,
)
from .grid import GridPosition, cumulative_distance, gap_threshold, run_at, virtual_column, white_run_histogram
from .pipeline import SegmentationReport, segment
from .spotting import Band, TerminalNode, spot_sources, spot_targets
from .tunneling import Hub, KnowledgeBase, Path, SearchParams, next_hub, refine_source, tunnel, tunnel_all

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
