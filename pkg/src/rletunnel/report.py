"""JSON serialisation of paths and segmentation reports."""

from __future__ import annotations

import json
from typing import Any

from .spotting import LEFT, TerminalNode
from .tunneling import INTERMEDIATE, SOURCE, TARGET, Hub, Path


def path_to_dict(path: Path) -> dict[str, Any]:
    return {
        "source_y": path.source.y,
        "source_weight": path.source.weight,
        "hubs": [{"y": h.y, "x": h.x, "dist": h.dist} for h in path.hubs],
        "crossed": [i for i, h in enumerate(path.hubs) if h.crossed],
        "crossovers": path.total_crossovers,
    }


def path_from_dict(d: dict[str, Any]) -> Path:
    crossed = set(d.get("crossed", ()))
    raw = d["hubs"]
    hubs = []
    for i, h in enumerate(raw):
        kind = SOURCE if i == 0 else (TARGET if i == len(raw) - 1 else INTERMEDIATE)
        hubs.append(Hub(y=int(h["y"]), x=int(h["x"]), dist=int(h["dist"]), kind=kind, crossed=int(i in crossed)))
    src = TerminalNode(y=int(d["source_y"]), side=LEFT, weight=int(d.get("source_weight", hubs[0].dist)))
    return Path(source=src, hubs=tuple(hubs))


def report_to_dict(report) -> dict[str, Any]:
    kept = {id(p) for p in report.retained}
    return {
        "width": report.width,
        "height": report.height,
        "t": report.t,
        "t_prime": report.t_prime,
        "min_depth": report.min_depth,
        "min_rows": report.min_rows,
        "merge_tolerance": report.merge_tolerance,
        "sources": [{"y": s.y, "weight": s.weight} for s in report.sources],
        "targets": [{"y": s.y, "weight": s.weight} for s in report.targets],
        "paths": [path_to_dict(p) for p in report.retained],
        "discarded": [path_to_dict(p) for p in report.paths if id(p) not in kept],
        "correspondence": {
            "pairs": [list(p) for p in report.correspondence.pairs],
            "order_preserving": report.correspondence.order_preserving,
        },
        "row_labels": list(report.row_labels),
        "counters": report.counters.as_dict(),
    }


def dumps(obj: dict[str, Any]) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def load_segmentation(text: str) -> tuple[dict[str, Any], list[Path]]:
    """Parse segmentation JSON; returns the raw document and its retained paths."""
    doc = json.loads(text)
    return doc, [path_from_dict(p) for p in doc.get("paths", [])]
