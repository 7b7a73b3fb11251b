import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from rletunnel.codec import Grid
from rletunnel.spotting import LEFT, RIGHT, Band, default_min_depth, spot_bands, spot_sources, spot_targets


def test_bands_and_midpoints():
    vals = [0, 9, 9, 9, 0, 9, 9, 0, 9, 9, 9, 9]
    bands = spot_bands(vals, min_depth=5, min_rows=3)
    assert bands == [Band(2, 4, 9), Band(9, 12, 9)]
    assert [b.midpoint for b in bands] == [3, 10]


def test_band_depth_is_minimum():
    assert spot_bands([6, 8, 7], 5, 1) == [Band(1, 3, 6)]


def test_default_min_depth_capped_by_width():
    assert default_min_depth([10, 10, 10, 10], t_prime=3, width=12) == 12
    assert default_min_depth([2, 2, 2, 50], t_prime=3, width=50) == 8


def _page():
    # 20 wide: three blank bands separated by two text bands
    blank = [20]
    text = [2, 14, 4]
    rows = [blank] * 4 + [text] * 5 + [blank] * 4 + [text] * 5 + [blank] * 4
    return Grid.from_rows(rows)


def test_spot_sources_and_targets():
    g = _page()
    src = spot_sources(g)
    tgt = spot_targets(g)
    assert [s.y for s in src] == [2, 11, 20]
    assert all(s.side == LEFT and s.weight == 20 for s in src)
    assert [t.y for t in tgt] == [2, 11, 20]
    assert all(t.side == RIGHT for t in tgt)


def test_ink_ending_rows_have_no_target_depth():
    g = Grid.from_rows([[5, 1]] * 4)
    assert spot_targets(g, min_depth=1, min_rows=1) == []


@given(st.lists(st.integers(0, 30), min_size=1, max_size=60), st.integers(1, 30), st.integers(1, 5))
@settings(max_examples=200, deadline=None)
def test_bands_are_disjoint_ordered_and_qualifying(vals, depth, rows):
    bands = spot_bands(vals, depth, rows)
    for b in bands:
        assert b.y_end - b.y_start + 1 >= rows
        assert all(v >= depth for v in vals[b.y_start - 1 : b.y_end])
        assert b.y_start <= b.midpoint <= b.y_end
    for a, b in zip(bands, bands[1:]):
        assert a.y_end + 1 < b.y_start
