"""Input coercion shared by the estimators and the CLI."""

from __future__ import annotations

import numbers

import numpy as np

from .codec import Grid, Raster, decode, encode
from .exceptions import InvalidInputError


def check_raster(X) -> Raster:
    """Return ``X`` as a :class:`Raster`; accepts rasters, grids and 2-D 0/1 arrays."""
    if isinstance(X, Raster):
        return X
    if isinstance(X, Grid):
        return decode(X)
    arr = np.asarray(X)
    if arr.dtype == bool:
        arr = arr.astype(np.uint8)
    if arr.ndim != 2:
        raise InvalidInputError(f"expected a 2-D binary image, got shape {arr.shape}")
    return Raster(arr)


def check_grid(X) -> Grid:
    """Return ``X`` as a :class:`Grid`, encoding rasters and arrays on the way."""
    if isinstance(X, Grid):
        return X
    return encode(check_raster(X))


def check_positive_int(value, name: str, allow_none: bool = False):
    if value is None and allow_none:
        return None
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 1:
        raise InvalidInputError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_t_prime(value):
    """``'auto'``/``None`` pass through; anything else must be a positive integer."""
    if value is None or value == "auto":
        return "auto"
    return check_positive_int(value, "t_prime")
