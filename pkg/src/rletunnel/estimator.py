"""scikit-learn style front ends.

``RunLengthEncoder`` maps rasters to grids and back.  ``TunnelingSegmenter``
fits the whole pipeline to one document image; after ``fit`` it exposes the
retained paths and per-row line labels as fitted attributes.

>>> seg = TunnelingSegmenter(t=8).fit(grid)           # doctest: +SKIP
>>> seg.labels_[:5], len(seg.paths_)                   # doctest: +SKIP
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .analysis import path_polyline
from .codec import decode
from .pipeline import segment
from .spotting import DEFAULT_MIN_ROWS
from .tunneling import DEFAULT_T
from .validation import check_grid, check_positive_int, check_raster, check_t_prime


class RunLengthEncoder(TransformerMixin, BaseEstimator):
    """Stateless raster <-> grid transformer."""

    def fit(self, X=None, y=None):
        return self

    def transform(self, X):
        return check_grid(X)

    def inverse_transform(self, X):
        return decode(check_grid(X))


class TunnelingSegmenter(BaseEstimator):
    """Text-line segmentation of a binary document in its run-length form.

    Parameters
    ----------
    t : int
        Vertical search half-window in rows.
    t_prime : int or "auto"
        Gap threshold in pixels; ``"auto"`` uses the white-run mode.
    min_depth : int or None
        Band depth for terminal spotting; ``None`` derives it from the page.
    min_rows : int
        Minimum band height in rows.
    merge_tolerance : float or None
        ``|r|`` below which adjacent paths count as duplicates.
    use_kb : bool
        Memoise per-row cumulative sums.  Never changes the result.

    Attributes
    ----------
    report_ : SegmentationReport
    paths_ : list of Path
        Retained paths, top to bottom.
    labels_ : ndarray of shape (height,)
    t_prime_ : int
    """

    def __init__(self, t=DEFAULT_T, t_prime="auto", min_depth=None, min_rows=DEFAULT_MIN_ROWS, merge_tolerance=None, use_kb=True):
        self.t = t
        self.t_prime = t_prime
        self.min_depth = min_depth
        self.min_rows = min_rows
        self.merge_tolerance = merge_tolerance
        self.use_kb = use_kb

    def fit(self, X, y=None):
        grid = check_grid(X)
        report = segment(
            grid,
            t=check_positive_int(self.t, "t"),
            t_prime=check_t_prime(self.t_prime),
            min_depth=check_positive_int(self.min_depth, "min_depth", allow_none=True),
            min_rows=check_positive_int(self.min_rows, "min_rows"),
            merge_tolerance=self.merge_tolerance,
            use_kb=bool(self.use_kb),
        )
        self.report_ = report
        self.paths_ = report.retained
        self.labels_ = np.asarray(report.row_labels)
        self.t_prime_ = report.t_prime
        self.n_features_in_ = grid.width
        return self

    def _check_fitted(self):
        if not hasattr(self, "report_"):
            raise NotFittedError("TunnelingSegmenter is not fitted yet; call fit first")

    def predict(self, X=None):
        """Per-row line labels.  Passing a new image refits on it."""
        if X is not None:
            return self.fit(X).labels_
        self._check_fitted()
        return self.labels_

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_

    def transform(self, X=None):
        """Separator polylines, shape ``(n_paths, width)``: one row index per pixel column."""
        if X is not None:
            self.fit(X)
        self._check_fitted()
        width = self.report_.width
        if not self.paths_:
            return np.zeros((0, width), dtype=np.int64)
        return np.vstack([path_polyline(p, width) for p in self.paths_])

    def fit_transform(self, X, y=None):
        return self.transform(X)

    def line_mask(self, X):
        """Label image: every pixel gets the line index of the band it sits in."""
        raster = check_raster(X)
        polys = self.transform(raster) if not hasattr(self, "report_") else self.transform()
        rows = np.arange(1, raster.height + 1)[:, None]
        return (rows[None, :, :] >= polys[:, None, :]).sum(axis=0)
