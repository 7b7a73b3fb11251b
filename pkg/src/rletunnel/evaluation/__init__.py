"""Synthetic corpora, a pixel-domain reference implementation and scoring."""

from .metrics import EvalResult, detection_rate, evaluate, match_paths, recognition_accuracy
from .oracle import OracleResult, oracle_segment, pixel_gap_threshold
from .runner import bench_page, compare_with_oracle, evaluate_page
from .synth import CorpusSpec, GroundTruth, generate_corpus, generate_page, scaled_window, sweep_specs

__all__ = [name for name in dir() if not name.startswith("_")]
