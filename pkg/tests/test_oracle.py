import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rletunnel.codec import Raster, decode, encode
from rletunnel.evaluation.oracle import oracle_segment, pixel_gap_threshold
from rletunnel.evaluation.runner import compare_with_oracle
from rletunnel.evaluation.synth import CorpusSpec, generate_page
from rletunnel.grid import gap_threshold
from rletunnel.pipeline import segment
from rletunnel.tunneling import SearchParams


def test_obstacle_matches_oracle(obstacle_grid):
    raster = decode(obstacle_grid)
    assert pixel_gap_threshold(raster) == gap_threshold(obstacle_grid) == 2
    res = oracle_segment(raster, SearchParams(t=6, t_prime=2), min_depth=4, min_rows=3)
    rep = segment(obstacle_grid, t=6, t_prime=2, min_depth=4, min_rows=3)
    assert [p.trajectory() for p in res.paths] == [p.trajectory() for p in rep.paths]


@given(
    arrays(np.uint8, st.tuples(st.integers(4, 20), st.integers(8, 40)), elements=st.sampled_from([0, 0, 0, 0, 1])),
    st.integers(1, 6),
    st.integers(1, 4),
)
@settings(max_examples=100, deadline=None)
def test_random_pages_match_oracle(pix, t, tp):
    raster = Raster(pix)
    rep = segment(encode(raster), t=t, t_prime=tp, min_depth=1, min_rows=1)
    orc = oracle_segment(raster, SearchParams(t=t, t_prime=tp), min_depth=1, min_rows=1)
    assert [p.trajectory() for p in rep.paths] == [p.trajectory() for p in orc.paths]
    assert [p.trajectory() for p in rep.retained] == [p.trajectory() for p in orc.retained]


def test_synthetic_pages_match_oracle():
    for seed in range(4):
        raster, _ = generate_page(CorpusSpec(lines=4, skew_deg=2, touch_prob=0.3, extension=1.0, seed=seed))
        cmp = compare_with_oracle(raster, t=8)
        assert cmp.same_paths and cmp.same_retained
        assert cmp.report.counters.grid_entries_read < cmp.oracle.counters.pixel_reads
