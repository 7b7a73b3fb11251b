from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass
class OpCounters:
    """Operation counts accumulated by one segmentation run.

    ``grid_entries_read`` is bumped by the compressed-domain code and
    ``pixel_reads`` by the pixel-domain oracle, so a single instance can be
    shared or each run can own its own.  Every window-row evaluation is
    either a knowledge-base hit or a miss.
    """

    grid_entries_read: int = 0
    pixel_reads: int = 0
    kb_hits: int = 0
    kb_misses: int = 0

    @property
    def window_evaluations(self) -> int:
        return self.kb_hits + self.kb_misses

    def merge(self, other: "OpCounters") -> "OpCounters":
        self.grid_entries_read += other.grid_entries_read
        self.pixel_reads += other.pixel_reads
        self.kb_hits += other.kb_hits
        self.kb_misses += other.kb_misses
        return self

    def as_dict(self) -> dict:
        return asdict(self)
