"""Acceptance criteria 1-9, one PASS/FAIL line each in the terminal summary."""

import math
import time

import numpy as np
import pytest

from rletunnel.analysis import path_distance, resolve_over_segmentation, sample_path
from rletunnel.codec import Grid, Raster, decode, encode
from rletunnel.evaluation.metrics import detection_rate
from rletunnel.evaluation.runner import compare_with_oracle, evaluate_page
from rletunnel.evaluation.synth import CorpusSpec, generate_page, sweep_specs
from rletunnel.pipeline import segment
from rletunnel.spotting import LEFT, TerminalNode
from rletunnel.tunneling import Hub, SearchParams, next_hub, refine_source

from conftest import OBSTACLE_ROWS, record
from test_metrics import PUBLISHED_RATES

SWEEP_PAGES = 200
SWEEP_SEED = 2024


def test_c1_worked_example():
    grid = Grid.from_rows(OBSTACLE_ROWS)
    params = SearchParams(t=6, t_prime=2)

    def run():
        src = refine_source(grid, TerminalNode(6, LEFT, 4), params)
        h1 = next_hub(grid, src, params)
        h2 = next_hub(grid, h1, params)
        return src, h1, h2

    run()
    best = math.inf
    for _ in range(20):
        t0 = time.perf_counter()
        src, h1, h2 = run()
        best = min(best, time.perf_counter() - t0)
    ok = (
        src.as_tuple() == (11, 1, 7)
        and (h1.y, h1.x, h1.dist) == (10, 3, 11)
        and (h2.y, h2.x, h2.crossed) == (10, 4, 1)
        and best < 1e-3
    )
    record(1, ok, f"source={src.as_tuple()} hub1={h1.as_tuple()} hub2={h2.as_tuple()} crossed={h2.crossed} time={best * 1e3:.3f}ms")
    assert ok


def test_c2_codec_round_trip():
    rng = np.random.default_rng(7)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(1000):
        w, h = int(rng.integers(1, 257)), int(rng.integers(1, 129))
        density = rng.uniform(0, 1)
        r = Raster((rng.random((h, w)) < density).astype(np.uint8))
        g = encode(r)
        if decode(g) != r or any(int(g.row(y).sum()) != w for y in range(1, h + 1)):
            bad += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 5
    record(2, ok, f"mismatches={bad}/1000 time={elapsed:.2f}s")
    assert ok


@pytest.fixture(scope="module")
def sweep():
    """Criterion 3's corpus compared in both domains, plus a KB-disabled rerun."""
    specs = sweep_specs(CorpusSpec(extension=1.0), SWEEP_PAGES, seed=SWEEP_SEED)
    t0 = time.perf_counter()
    rows = []
    for spec in specs:
        raster, _ = generate_page(spec)
        cmp = compare_with_oracle(raster, t=spec.window)
        rows.append((spec, raster, cmp))
    elapsed = time.perf_counter() - t0
    return rows, elapsed


def test_c3_oracle_equivalence(sweep):
    rows, elapsed = sweep
    same = sum(c.same_paths and c.same_retained for _, _, c in rows)
    ok = same == len(rows) and elapsed < 60
    record(3, ok, f"identical={same}/{len(rows)} time={elapsed:.1f}s")
    assert ok


def test_c4_memoization_transparency(sweep):
    rows, _ = sweep
    unchanged = 0
    multi = hit = 0
    for spec, raster, cmp in rows:
        off = segment(encode(raster), t=spec.window, use_kb=False)
        unchanged += [p.trajectory() for p in off.paths] == [p.trajectory() for p in cmp.report.paths]
        if any(len(p) >= 3 for p in cmp.report.paths):
            multi += 1
            hit += cmp.report.counters.kb_hits > 0
    share = hit / multi if multi else 0.0
    ok = unchanged == len(rows) and multi > 0 and share >= 0.95
    record(4, ok, f"unchanged={unchanged}/{len(rows)} kb_hits>0 on {hit}/{multi} pages with >=3 hubs ({share:.1%})")
    assert ok


def test_c5_counter_dominance(sweep):
    rows, _ = sweep
    grid_reads = [c.report.counters.grid_entries_read for _, _, c in rows]
    pixel_reads = [c.oracle.counters.pixel_reads for _, _, c in rows]
    dominated = sum(g < p for g, p in zip(grid_reads, pixel_reads))
    ratio = sum(grid_reads) / sum(pixel_reads)
    ok = dominated == len(rows) and ratio <= 0.5
    record(5, ok, f"grid<pixel on {dominated}/{len(rows)} pages aggregate ratio={ratio:.4f}")
    assert ok


def test_c6_adjacent_path_distance(adjacent_paths):
    p1, p2 = adjacent_paths
    u, v = sample_path(p1, 500), sample_path(p2, 500)
    d = path_distance(p1, p2, 500)
    ok = (
        u == [1977, 1977, 2020, 2029, 2049]
        and v == [2059, 2073, 2105, 2132, 2124]
        and abs(abs(d.r) - 88.2) <= 0.01
    )
    record(6, ok, f"u={u} v={v} |r|={abs(d.r):.2f} (reference value 63 does not follow from u and v)")
    assert ok


def test_c7_quality_on_synthetic_ground_truth():
    t0 = time.perf_counter()
    results = {}
    corpora = {
        "clean skew 0": CorpusSpec(skew_deg=0.0),
        "clean skew 1": CorpusSpec(skew_deg=1.0),
        "stressed": CorpusSpec(touch_prob=0.3, skew_deg=3.0, false_gaps=1, extension=0.5),
    }
    for name, base in corpora.items():
        o2o = n = m = 0
        for i in range(40):
            raster, gt = generate_page(base, seed=1000 + i)
            row = evaluate_page(raster, gt, t=base.window)
            o2o, n, m = o2o + row["o2o"], n + row["N"], m + row["M"]
        results[name] = (o2o / n, o2o / m)
    elapsed = time.perf_counter() - t0
    clean_ok = all(results[k] == (1.0, 1.0) for k in ("clean skew 0", "clean skew 1"))
    ok = clean_ok and results["stressed"][1] >= 0.85 and elapsed < 120
    detail = " ".join(f"[{k}: DR={dr:.3f} RA={ra:.3f}]" for k, (dr, ra) in results.items())
    record(7, ok, f"{detail} time={elapsed:.1f}s")
    assert ok


def test_c8_metric_formulas():
    rate = detection_rate(2578, 2649)
    rows_ok = all(
        math.floor(detection_rate(o, n) * 10000) / 100 == pytest.approx(pct, abs=1e-9)
        for _, n, left, right, lp, rp in PUBLISHED_RATES
        for o, pct in ((left, lp), (right, rp))
    )
    ok = abs(rate - 0.9731) <= 1e-4 and rows_ok
    record(8, ok, f"DR(2578,2649)={rate:.5f} reference rows reproduced={rows_ok}")
    assert ok


def test_c9_over_segmentation_resolution():
    spec = CorpusSpec(false_gaps=1)
    exact = idempotent = over = 0
    for i in range(50):
        raster, gt = generate_page(spec, seed=5000 + i)
        rep = segment(encode(raster), t=spec.window)
        over += len(rep.paths) > gt.gap_count
        exact += len(rep.retained) == gt.gap_count
        again = resolve_over_segmentation(rep.retained, rep.t_prime, rep.merge_tolerance, width=rep.width)
        idempotent += again == rep.retained
    ok = exact >= 48 and idempotent == 50
    record(9, ok, f"count matches on {exact}/50 pages (raw over-segmented on {over}) idempotent on {idempotent}/50")
    assert ok
