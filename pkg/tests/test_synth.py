import numpy as np
import pytest

from rletunnel.codec import encode
from rletunnel.evaluation.synth import CorpusSpec, generate_corpus, generate_page, scaled_window, sweep_specs
from rletunnel.exceptions import InvalidSpecError


def test_deterministic():
    spec = CorpusSpec(seed=3, touch_prob=0.2, skew_deg=2)
    a, ga = generate_page(spec)
    b, gb = generate_page(spec)
    assert a == b
    assert ga.bridges == gb.bridges


def test_ground_truth_shape():
    r, gt = generate_page(CorpusSpec(lines=4, seed=1))
    assert gt.gap_count == 5
    assert gt.height == r.height and gt.width == r.width
    assert len(gt.row_labels) == r.height
    for poly in gt.gap_polylines:
        assert len(poly) == r.width
    # gap centres ordered top to bottom everywhere
    stack = np.vstack(gt.gap_polylines)
    assert (np.diff(stack, axis=0) > 0).all()


def test_gap_centres_are_blank_on_clean_pages():
    r, gt = generate_page(CorpusSpec(lines=5, seed=2))
    for poly in gt.gap_polylines:
        rows = np.rint(poly).astype(int) - 1
        assert r.pixels[rows, np.arange(r.width)].sum() == 0


def test_touch_gaps_bridge_named_gap():
    _, gt = generate_page(CorpusSpec(lines=5, touch_gaps=(2,), seed=7))
    assert gt.bridges and all(k == 2 for k, _, _ in gt.bridges)


def test_false_gaps_recorded():
    _, gt = generate_page(CorpusSpec(lines=5, false_gaps=1, seed=4))
    assert len(gt.false_bands) == 1


def test_text_round_trip():
    spec = CorpusSpec(lines=3, skew_deg=1.5, touch_gaps=(1, 2), pages=4, seed=9)
    assert CorpusSpec.from_text(spec.to_text()) == spec


@pytest.mark.parametrize(
    "kwargs",
    [dict(gap_px=0), dict(skew_deg=4), dict(touch_prob=0.5), dict(lines=1), dict(false_gaps=9), dict(pages=0)],
)
def test_invalid_specs(kwargs):
    with pytest.raises(InvalidSpecError):
        CorpusSpec(**kwargs)


def test_unknown_key_rejected():
    with pytest.raises(InvalidSpecError):
        CorpusSpec.from_text("lines=3\ncolour=blue\n")


def test_scaled_window():
    assert scaled_window(100) == 20
    assert scaled_window(40) == 8
    assert scaled_window(1) == 1


def test_corpus_and_sweep():
    pages = list(generate_corpus(CorpusSpec(pages=3, lines=3)))
    assert [i for i, _, _ in pages] == [0, 1, 2]
    specs = sweep_specs(CorpusSpec(), 5, seed=1)
    assert specs[0].skew_deg == 0 and specs[-1].skew_deg == 3
    assert all(s.touch_prob in (0.0, 0.1, 0.2, 0.3) for s in specs)
    for s in specs:
        encode(generate_page(s)[0])
