import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rletunnel.analysis import (
    build_correspondence,
    default_merge_tolerance,
    path_distance,
    path_polyline,
    resolve_over_segmentation,
    row_labels,
    sample_path,
)
from rletunnel.exceptions import InvalidInputError
from rletunnel.spotting import RIGHT, TerminalNode

from conftest import make_path


def test_adjacent_samples(adjacent_paths):
    p1, p2 = adjacent_paths
    assert sample_path(p1, 500) == [1977, 1977, 2020, 2029, 2049]
    assert sample_path(p2, 500) == [2059, 2073, 2105, 2132, 2124]


def test_adjacent_distance(adjacent_paths):
    d = path_distance(*adjacent_paths, interval=500)
    assert d.n == 5
    assert d.r == pytest.approx(-88.2, abs=1e-9)


def test_sample_interval_validation(adjacent_paths):
    with pytest.raises(InvalidInputError):
        sample_path(adjacent_paths[0], 0)


def test_polyline_steps():
    p = make_path([(5, 3), (7, 6), (6, 8)])
    assert path_polyline(p).tolist() == [5, 5, 5, 7, 7, 7, 6, 6]
    assert path_polyline(p, 10).tolist()[-2:] == [6, 6]


hub_lists = st.lists(st.tuples(st.integers(1, 300), st.integers(1, 60)), min_size=1, max_size=8).map(
    lambda hs: [(y, d) for (y, d) in zip([h[0] for h in hs], np.cumsum([h[1] for h in hs]).tolist())]
)


@given(hub_lists, hub_lists, st.integers(1, 50))
@settings(max_examples=200, deadline=None)
def test_distance_antisymmetric(a, b, interval):
    p, q = make_path(a), make_path(b)
    w = max(p.final_dist, q.final_dist)
    assert path_distance(p, q, interval, w).r == pytest.approx(-path_distance(q, p, interval, w).r)
    assert path_distance(p, p, interval, w).r == 0
    assert len(sample_path(p, interval, w)) == math.ceil(w / interval)


def test_correspondence_order():
    a = make_path([(10, 5), (12, 20)])
    b = make_path([(40, 5), (38, 20)])
    c = build_correspondence([a, b])
    assert c.pairs == ((10, 12), (40, 38))
    assert c.order_preserving and c.valid
    crossed = build_correspondence([make_path([(10, 20)]), make_path([(40, 5), (5, 20)])])
    assert not crossed.order_preserving


def test_correspondence_with_targets():
    a = make_path([(10, 5), (12, 20)])
    b = make_path([(40, 5), (38, 20)])
    tg = [TerminalNode(13, RIGHT, 5), TerminalNode(90, RIGHT, 5)]
    c = build_correspondence([a, b], targets=tg, tolerance=5)
    assert c.pairs == ((10, 13), (40, None))
    assert c.valid
    c2 = build_correspondence([b, a], targets=tg, tolerance=5)
    assert c2.pairs == ((40, None), (10, 13))
    assert not c2.valid


def test_default_merge_tolerance():
    assert default_merge_tolerance([10], 3) == 3.0
    assert default_merge_tolerance([10, 50, 90], 3) == 20.0
    assert default_merge_tolerance([10, 12], 3) == 3.0


def _gap(y, width=100, wiggle=0):
    return make_path([(y, width // 2), (y + wiggle, width)])


def test_resolve_drops_duplicate_with_more_hubs():
    top, bottom = _gap(10), _gap(90)
    clean = _gap(50)
    dup = make_path([(52, 30), (49, 60), (53, 100)])
    kept = resolve_over_segmentation([top, clean, dup, bottom], interval=10, merge_tolerance=20)
    assert kept == [top, clean, bottom]


def test_resolve_tie_drops_less_parallel():
    top, bottom = _gap(10), _gap(90)
    straight = make_path([(50, 50), (50, 100)])
    wobbly = make_path([(53, 50), (45, 100)])
    kept = resolve_over_segmentation([top, straight, wobbly, bottom], interval=10, merge_tolerance=20)
    assert straight in kept and wobbly not in kept


def test_resolve_idempotent():
    paths = [_gap(10), _gap(12, wiggle=2), _gap(14), _gap(60)]
    once = resolve_over_segmentation(paths, 10, 8)
    assert resolve_over_segmentation(once, 10, 8) == once
    assert len(once) == 2


def test_row_labels():
    labels = row_labels([_gap(3), _gap(7)], height=10, width=100)
    assert labels == [0, 0, 1, 1, 1, 1, 2, 2, 2, 2]
