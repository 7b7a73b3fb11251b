import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from rletunnel.codec import Grid, Raster, decode
from rletunnel.estimator import RunLengthEncoder, TunnelingSegmenter
from rletunnel.evaluation.synth import CorpusSpec, generate_page
from rletunnel.exceptions import InvalidInputError


@pytest.fixture(scope="module")
def page():
    return generate_page(CorpusSpec(lines=4, seed=11))


def test_encoder_round_trip(sample_grid):
    enc = RunLengthEncoder()
    raster = decode(sample_grid)
    g = enc.fit_transform(raster)
    assert isinstance(g, Grid) and g == sample_grid
    assert enc.inverse_transform(g) == raster
    assert enc.transform(raster.pixels.astype(bool)) == sample_grid


def test_params_and_clone():
    seg = TunnelingSegmenter(t=8, t_prime=3)
    assert seg.get_params()["t"] == 8
    other = clone(seg).set_params(min_rows=2)
    assert other.min_rows == 2 and seg.min_rows == 3


def test_fit_predict_transform(page):
    raster, gt = page
    seg = TunnelingSegmenter(t=8)
    labels = seg.fit_predict(raster)
    assert labels.shape == (raster.height,)
    assert len(seg.paths_) == gt.gap_count
    polys = seg.transform()
    assert polys.shape == (gt.gap_count, raster.width)
    mask = seg.line_mask(raster)
    assert mask.shape == (raster.height, raster.width)
    assert mask.max() == gt.gap_count
    # the same result from the raw array
    assert np.array_equal(TunnelingSegmenter(t=8).fit(raster.pixels).labels_, labels)


def test_not_fitted():
    with pytest.raises(NotFittedError):
        TunnelingSegmenter().predict()


@pytest.mark.parametrize("kwargs", [dict(t=0), dict(t=2.5), dict(t_prime=-1), dict(min_rows=0)])
def test_bad_params(kwargs, page):
    with pytest.raises(InvalidInputError):
        TunnelingSegmenter(**kwargs).fit(page[0])


def test_bad_input():
    with pytest.raises(InvalidInputError):
        TunnelingSegmenter().fit(np.zeros((2, 2, 2)))
