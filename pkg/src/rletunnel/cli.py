"""Command-line front end.

Subcommands: ``encode``, ``decode``, ``segment``, ``spot``, ``histogram``,
``synth``, ``eval``, ``bench`` and ``overlay``.  Run ``rletunnel <cmd> -h``
for the flags of each.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Optional

from .codec import load_grid, load_raster, read_pbm, write_pbm, write_ppm, write_rleg
from .evaluation.runner import bench_page, evaluate_page
from .evaluation.synth import CorpusSpec, generate_corpus, generate_page
from .exceptions import RLETunnelError, StuckError
from .grid import gap_threshold, white_run_histogram
from .overlay import render_overlay
from .pipeline import resolve_params, segment
from .report import dumps, load_segmentation, report_to_dict
from .spotting import spot_sources, spot_targets
from .tunneling import DEFAULT_T

log = logging.getLogger("rletunnel")


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    out: Optional[str] = None
    t: object = DEFAULT_T
    tprime: object = "auto"
    min_depth: Optional[int] = None
    min_rows: int = 3
    merge_tol: Optional[float] = None
    match_tol: Optional[float] = None
    seed: Optional[int] = None
    jobs: int = 1
    ascii: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        cfg = cls(command=ns.command)
        for name in ("inputs", "out", "t", "tprime", "min_depth", "min_rows", "merge_tol", "match_tol", "seed", "jobs", "ascii"):
            if hasattr(ns, name):
                setattr(cfg, name, getattr(ns, name))
        return cfg

    def segment_kwargs(self) -> dict:
        return dict(
            t=self.t if self.t == "auto" else int(self.t),
            t_prime=self.tprime,
            min_depth=self.min_depth,
            min_rows=self.min_rows,
            merge_tolerance=self.merge_tol,
        )


def _window_arg(value: str):
    if value == "auto":
        return value
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError("--t must be >= 1")
    return v


def _tprime_arg(value: str):
    if value == "auto":
        return value
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError("--tprime must be >= 1 or 'auto'")
    return v


def _add_search_flags(p: argparse.ArgumentParser, t_default) -> None:
    p.add_argument("--t", type=_window_arg, default=t_default, help="vertical search half-window in rows")
    p.add_argument("--tprime", type=_tprime_arg, default="auto", help="gap threshold in pixels, or 'auto'")
    p.add_argument("--min-depth", dest="min_depth", type=int, default=None, help="band depth for terminal spotting")
    p.add_argument("--min-rows", dest="min_rows", type=int, default=3, help="minimum band height in rows")
    p.add_argument("--merge-tol", dest="merge_tol", type=float, default=None, help="|r| below which adjacent paths merge")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rletunnel", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="PBM -> RLEG")
    p.add_argument("inputs", nargs=1)
    p.add_argument("--out", required=True)

    p = sub.add_parser("decode", help="RLEG -> PBM")
    p.add_argument("inputs", nargs=1)
    p.add_argument("--out", required=True)
    p.add_argument("--ascii", action="store_true", help="write P1 instead of P4")

    p = sub.add_parser("segment", help="segment RLEG or PBM documents into text lines")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--out", help="output file (one input) or directory (several); stdout if omitted")
    p.add_argument("--jobs", type=int, default=1)
    _add_search_flags(p, DEFAULT_T)

    p = sub.add_parser("spot", help="print spotted terminal nodes as 'side y weight'")
    p.add_argument("inputs", nargs=1)
    p.add_argument("--out")
    p.add_argument("--tprime", type=_tprime_arg, default="auto")
    p.add_argument("--min-depth", dest="min_depth", type=int, default=None)
    p.add_argument("--min-rows", dest="min_rows", type=int, default=3)

    p = sub.add_parser("histogram", help="white-run histogram as CSV 'value,count'")
    p.add_argument("inputs", nargs=1)
    p.add_argument("--out")

    p = sub.add_parser("synth", help="render a synthetic corpus with ground truth")
    p.add_argument("inputs", nargs=1, metavar="corpus.txt")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=None)

    for name, help_ in (("eval", "segment a synthetic corpus and score it"), ("bench", "compare compressed and pixel-domain cost")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("inputs", nargs=1, metavar="corpus.txt|dir")
        p.add_argument("--out", help="JSON report (eval) or CSV (bench); stdout if omitted")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--jobs", type=int, default=1)
        _add_search_flags(p, "auto")
        if name == "eval":
            p.add_argument("--match-tol", dest="match_tol", type=float, default=None)
            p.add_argument("--csv", dest="csv_out", default=None, help="per-page CSV export")

    p = sub.add_parser("overlay", help="draw segmentation paths over the document")
    p.add_argument("inputs", nargs=2, metavar=("image", "segmentation.json"))
    p.add_argument("--out", required=True)
    return parser


# ------------------------------------------------------------------ helpers


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _map(fn, items, jobs: int):
    """Ordered map, optionally over a process pool."""
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def _load_corpus(cfg: RunConfig):
    spec = CorpusSpec.from_text(FsPath(cfg.inputs[0]).read_text())
    if cfg.seed is not None:
        spec = CorpusSpec(**{**spec.__dict__, "seed": cfg.seed})
    return spec


def _resolve_t(cfg: RunConfig, spec: Optional[CorpusSpec]) -> int:
    if cfg.t == "auto":
        t = spec.window if spec is not None else DEFAULT_T
        log.info("resolved --t auto -> %d", t)
        return t
    return int(cfg.t)


# ----------------------------------------------------------------- commands


def cmd_encode(cfg: RunConfig) -> int:
    write_rleg(load_grid(cfg.inputs[0]), cfg.out)
    return 0


def cmd_decode(cfg: RunConfig) -> int:
    write_pbm(load_raster(cfg.inputs[0]), cfg.out, binary=not cfg.ascii)
    return 0


def _segment_one(args):
    path, kwargs = args
    grid = load_grid(path)
    params, depth, tol = resolve_params(grid, kwargs["t"], kwargs["t_prime"], kwargs["min_depth"], kwargs["merge_tolerance"])
    log.info("%s: t=%d t_prime=%d min_depth=%d min_rows=%d merge_tol=%s", path, params.t, params.t_prime, depth, kwargs["min_rows"], "auto" if tol is None else tol)
    report = segment(grid, t=params.t, t_prime=params.t_prime, min_depth=depth, min_rows=kwargs["min_rows"], merge_tolerance=tol)
    return dumps(report_to_dict(report))


def cmd_segment(cfg: RunConfig) -> int:
    kwargs = cfg.segment_kwargs()
    docs = _map(_segment_one, [(p, kwargs) for p in cfg.inputs], cfg.jobs)
    if len(cfg.inputs) == 1:
        _emit(docs[0], cfg.out)
        return 0
    if cfg.out is None:
        for d in docs:
            sys.stdout.write(d)
        return 0
    os.makedirs(cfg.out, exist_ok=True)
    for path, d in zip(cfg.inputs, docs):
        _emit(d, os.path.join(cfg.out, FsPath(path).stem + ".json"))
    return 0


def cmd_spot(cfg: RunConfig) -> int:
    grid = load_grid(cfg.inputs[0])
    tp = gap_threshold(grid) if cfg.tprime == "auto" else int(cfg.tprime)
    nodes = spot_sources(grid, cfg.min_depth, cfg.min_rows, t_prime=tp) + spot_targets(grid, cfg.min_depth, cfg.min_rows, t_prime=tp)
    _emit("".join(f"{n.side} {n.y} {n.weight}\n" for n in nodes), cfg.out)
    return 0


def cmd_histogram(cfg: RunConfig) -> int:
    hist = white_run_histogram(load_grid(cfg.inputs[0]))
    _emit("value,count\n" + "".join(f"{v},{c}\n" for v, c in hist.items()), cfg.out)
    return 0


def cmd_synth(cfg: RunConfig) -> int:
    spec = _load_corpus(cfg)
    os.makedirs(cfg.out, exist_ok=True)
    for i, raster, gt in generate_corpus(spec):
        stem = os.path.join(cfg.out, f"page_{i:04d}")
        write_pbm(raster, stem + ".pbm")
        doc = {
            "line_count": gt.line_count,
            "width": gt.width,
            "height": gt.height,
            "gap_polylines": [[round(float(v), 3) for v in p] for p in gt.gap_polylines],
            "gap_heights": gt.gap_heights,
            "row_labels": gt.row_labels,
            "bridges": gt.bridges,
            "false_bands": gt.false_bands,
        }
        _emit(json.dumps(doc) + "\n", stem + ".gt.json")
    return 0


def _eval_one(args):
    spec, seed, t, kwargs, match_tol = args
    raster, gt = generate_page(spec, seed)
    return evaluate_page(raster, gt, t, match_tolerance=match_tol, **kwargs)


def cmd_eval(cfg: RunConfig, csv_out: Optional[str] = None) -> int:
    spec = _load_corpus(cfg)
    t = _resolve_t(cfg, spec)
    kwargs = {k: v for k, v in cfg.segment_kwargs().items() if k != "t"}
    rows = _map(_eval_one, [(spec, spec.seed + i, t, kwargs, cfg.match_tol) for i in range(spec.pages)], cfg.jobs)
    o2o = sum(r["o2o"] for r in rows)
    n = sum(r["N"] for r in rows)
    m = sum(r["M"] for r in rows)
    counters = {k: sum(r[k] for r in rows) for k in ("grid_entries_read", "pixel_reads", "kb_hits", "kb_misses")}
    doc = {
        "t": t,
        "o2o": o2o,
        "N": n,
        "M": m,
        "DR": o2o / n if n else None,
        "RA": o2o / m if m else None,
        "counters": counters,
        "pages": [dict(page=i, **r) for i, r in enumerate(rows)],
    }
    _emit(json.dumps(doc, indent=1) + "\n", cfg.out)
    if csv_out:
        buf = io.StringIO()
        fields = ["page"] + list(rows[0].keys())
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for i, r in enumerate(rows):
            w.writerow(dict(page=i, **r))
        _emit(buf.getvalue(), csv_out)
    return 0


def _bench_one(args):
    kind, item, t, kwargs = args
    if kind == "spec":
        spec, seed = item
        raster, _ = generate_page(spec, seed)
    else:
        raster = load_raster(item)
    return bench_page(raster, t, **kwargs)


def cmd_bench(cfg: RunConfig) -> int:
    src = cfg.inputs[0]
    kwargs = {"min_rows": cfg.min_rows, "merge_tolerance": cfg.merge_tol}
    if os.path.isdir(src):
        files = sorted(f for f in os.listdir(src) if f.endswith((".pbm", ".rleg")))
        items = [("file", os.path.join(src, f)) for f in files]
        ids = files
        t = _resolve_t(cfg, None)
    else:
        spec = _load_corpus(cfg)
        items = [("spec", (spec, spec.seed + i)) for i in range(spec.pages)]
        ids = [f"page_{i:04d}" for i in range(spec.pages)]
        t = _resolve_t(cfg, spec)
    if not items:
        raise RLETunnelError(f"empty corpus: {src}")
    rows = _map(_bench_one, [(k, it, t, kwargs) for k, it in items], cfg.jobs)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["page", "grid_entries_read", "pixel_reads", "compressed_ms", "uncompressed_ms"])
    for pid, r in zip(ids, rows):
        w.writerow([pid, r["grid_entries_read"], r["pixel_reads"], r["compressed_ms"], r["uncompressed_ms"]])
    tot = {k: sum(r[k] for r in rows) for k in rows[0]}
    w.writerow(["TOTAL", tot["grid_entries_read"], tot["pixel_reads"], round(tot["compressed_ms"], 3), round(tot["uncompressed_ms"], 3)])
    _emit(buf.getvalue(), cfg.out)
    ratio = tot["grid_entries_read"] / tot["pixel_reads"]
    sys.stderr.write(f"pages={len(rows)} grid_entries_read={tot['grid_entries_read']} pixel_reads={tot['pixel_reads']} ratio={ratio:.4f}\n")
    return 0


def cmd_overlay(cfg: RunConfig) -> int:
    image, seg = cfg.inputs
    raster = load_raster(image)
    doc, paths = load_segmentation(FsPath(seg).read_text())
    if (doc.get("width"), doc.get("height")) != (raster.width, raster.height):
        raise RLETunnelError(
            f"dimension mismatch: image is {raster.width}x{raster.height}, segmentation is {doc.get('width')}x{doc.get('height')}"
        )
    write_ppm(render_overlay(raster, paths), cfg.out)
    return 0


COMMANDS = {
    "encode": cmd_encode,
    "decode": cmd_decode,
    "segment": cmd_segment,
    "spot": cmd_spot,
    "histogram": cmd_histogram,
    "synth": cmd_synth,
    "eval": cmd_eval,
    "bench": cmd_bench,
    "overlay": cmd_overlay,
}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(name)s: %(message)s", stream=sys.stderr, force=True)
    cfg = RunConfig.from_args(ns)
    try:
        if cfg.command == "eval":
            return cmd_eval(cfg, csv_out=ns.csv_out)
        return COMMANDS[cfg.command](cfg)
    except StuckError as exc:
        sys.stderr.write(f"rletunnel: stuck tunneling from source y={exc.source_y}: {exc}\n")
        return 2
    except (RLETunnelError, OSError, ValueError) as exc:
        sys.stderr.write(f"rletunnel: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
