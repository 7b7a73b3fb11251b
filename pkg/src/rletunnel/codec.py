"""Lossless conversion between binary rasters and run-length grids.

A :class:`Grid` stores one row of run lengths per raster row.  Entry 1 of
every row is a white (background) run, entries then alternate black, white,
black, ... .  A row that starts with ink therefore begins with a zero.  Rows
are right-padded with zeros so the grid is rectangular.

File formats handled here:

* PBM, both ``P1`` (ASCII) and ``P4`` (packed binary); 1 is black/ink.
* ``RLEG v1`` plain text: a ``RLEG <width> <height>`` header followed by one
  line of unpadded run lengths per row.
* binary ``P6`` PPM output, used by the overlay renderer.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .exceptions import CorruptGridError, InvalidInputError

PathLike = Union[str, "os.PathLike[str]"]

RLEG_MAGIC = "RLEG"


@dataclass(frozen=True, eq=False)
class Raster:
    """Binary image, ``pixels[y, x]`` with 0 = background and 1 = ink."""

    pixels: np.ndarray

    def __post_init__(self):
        pix = np.asarray(self.pixels)
        if pix.ndim != 2:
            raise InvalidInputError(f"raster must be 2-D, got shape {pix.shape}")
        if pix.shape[0] == 0 or pix.shape[1] == 0:
            raise InvalidInputError(f"raster has zero width or height: {pix.shape}")
        if pix.dtype != np.uint8:
            if pix.size and not np.isin(pix, (0, 1)).all():
                raise InvalidInputError("raster pixels must be 0 or 1")
            pix = pix.astype(np.uint8)
        elif pix.max() > 1:
            raise InvalidInputError("raster pixels must be 0 or 1")
        pix = np.ascontiguousarray(pix)
        pix.setflags(write=False)
        object.__setattr__(self, "pixels", pix)

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    def __eq__(self, other):
        if not isinstance(other, Raster):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    def __hash__(self):
        return hash((self.pixels.shape, self.pixels.tobytes()))


@dataclass(frozen=True, eq=False)
class Grid:
    """Run-length representation of a binary raster.

    ``runs`` has shape ``(height, n_cols)``.  Columns are addressed 1-based
    in the public API (``G(y, x)``); the array itself is 0-based.
    """

    width: int
    runs: np.ndarray
    _row_lengths: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        runs = np.asarray(self.runs)
        if runs.ndim != 2 or runs.shape[0] == 0 or runs.shape[1] == 0:
            raise InvalidInputError(f"grid must be a non-empty 2-D table, got shape {runs.shape}")
        if self.width <= 0:
            raise InvalidInputError(f"grid width must be positive, got {self.width}")
        runs = np.ascontiguousarray(runs, dtype=np.int64)
        neg = np.flatnonzero((runs < 0).any(axis=1))
        if neg.size:
            raise CorruptGridError(f"row {neg[0] + 1}: negative run length", row=int(neg[0]) + 1)
        lengths = _row_lengths(runs, int(self.width))
        runs.setflags(write=False)
        lengths.setflags(write=False)
        object.__setattr__(self, "width", int(self.width))
        object.__setattr__(self, "runs", runs)
        object.__setattr__(self, "_row_lengths", lengths)

    @property
    def height(self) -> int:
        return int(self.runs.shape[0])

    @property
    def n_cols(self) -> int:
        """Column count n' shared by every row (padding included)."""
        return int(self.runs.shape[1])

    @property
    def shape(self):
        return self.runs.shape

    def row(self, y: int) -> np.ndarray:
        """Unpadded run lengths of 1-based row ``y``."""
        return self.runs[y - 1, : self._row_lengths[y - 1]]

    @cached_property
    def row_lists(self) -> list[list[int]]:
        """Unpadded rows as plain lists; faster than array indexing in hot loops."""
        return [self.runs[j, :n].tolist() for j, n in enumerate(self._row_lengths)]

    def row_length(self, y: int) -> int:
        """Number of semantic (non-padding) entries in 1-based row ``y``."""
        return int(self._row_lengths[y - 1])

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return self.width == other.width and np.array_equal(self.runs, other.runs)

    def __hash__(self):
        return hash((self.width, self.runs.shape, self.runs.tobytes()))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], width: int | None = None) -> "Grid":
        """Build a grid from ragged or padded rows.

        ``width`` defaults to the sum of the first row.
        """
        rows = [list(map(int, r)) for r in rows]
        if not rows:
            raise InvalidInputError("grid needs at least one row")
        if width is None:
            width = sum(rows[0])
        return cls(width=width, runs=_pad(rows))


def _check_row(row: np.ndarray, width: int, y: int) -> int:
    """Validate one padded row and return its semantic length."""
    total = 0
    n = 0
    for i, v in enumerate(row):
        v = int(v)
        if total == width:
            if v != 0:
                raise CorruptGridError(f"row {y}: non-zero entry after width is exhausted", row=y)
            continue
        if v == 0 and i != 0:
            raise CorruptGridError(f"row {y}: zero run length at column {i + 1}", row=y)
        total += v
        n = i + 1
        if total > width:
            break
    if total != width:
        raise CorruptGridError(f"row {y}: run lengths sum to {int(row.sum())}, expected width {width}", row=y)
    return n


def _row_lengths(runs: np.ndarray, width: int) -> np.ndarray:
    """Vectorised row validation; the scalar checker words the error for the first bad row."""
    cs = np.cumsum(runs, axis=1)
    done = cs >= width
    lengths = np.where(done.any(axis=1), done.argmax(axis=1) + 1, runs.shape[1])
    cols = np.arange(runs.shape[1])[None, :]
    inside = cols < lengths[:, None]
    bad = (cs[:, -1] != width) | ((runs == 0) & inside & (cols > 0)).any(axis=1)
    if bad.any():
        j = int(np.flatnonzero(bad)[0])
        _check_row(runs[j], width, j + 1)
        raise CorruptGridError(f"row {j + 1}: invalid run lengths", row=j + 1)  # pragma: no cover
    return lengths.astype(np.int64)


def _pad(rows: list[list[int]]) -> np.ndarray:
    n_cols = max(len(r) for r in rows)
    out = np.zeros((len(rows), n_cols), dtype=np.int64)
    for j, r in enumerate(rows):
        out[j, : len(r)] = r
    return out


def encode_row(row: np.ndarray) -> list[int]:
    """Run lengths of one binary row, starting with a (possibly empty) white run."""
    row = np.asarray(row, dtype=np.int8)
    width = row.shape[0]
    edges = np.flatnonzero(np.diff(row)) + 1
    bounds = np.concatenate(([0], edges, [width]))
    runs = np.diff(bounds).tolist()
    if row[0] == 1:
        runs.insert(0, 0)
    return runs


def encode(raster: Raster) -> Grid:
    """Encode a raster as a zero-padded run-length grid."""
    if not isinstance(raster, Raster):
        raster = Raster(np.asarray(raster))
    rows = [encode_row(r) for r in raster.pixels]
    return Grid(width=raster.width, runs=_pad(rows))


def decode(grid: Grid) -> Raster:
    """Expand a grid back into its raster."""
    out = np.empty((grid.height, grid.width), dtype=np.uint8)
    colours = np.arange(grid.n_cols, dtype=np.uint8) % 2
    for j in range(grid.height):
        out[j] = np.repeat(colours, grid.runs[j])
    return Raster(out)


# --------------------------------------------------------------------- PBM


_PBM_TOKEN = re.compile(rb"#[^\n]*|\S+")


def _tokens(data: bytes, start: int, count: int):
    """Yield ``count`` whitespace/comment separated header tokens and the offset after them."""
    pos = start
    out = []
    while len(out) < count:
        m = _PBM_TOKEN.search(data, pos)
        if m is None:
            raise InvalidInputError("truncated PBM header")
        pos = m.end()
        if m.group().startswith(b"#"):
            continue
        out.append(m.group())
    return out, pos


def parse_pbm(data: bytes) -> Raster:
    """Parse P1 or P4 PBM bytes."""
    magic = data[:2]
    if magic not in (b"P1", b"P4"):
        raise InvalidInputError(f"not a PBM file (magic {magic!r})")
    (w, h), pos = _tokens(data, 2, 2)
    try:
        width, height = int(w), int(h)
    except ValueError:
        raise InvalidInputError("malformed PBM dimensions") from None
    if width <= 0 or height <= 0:
        raise InvalidInputError(f"PBM has zero width or height ({width}x{height})")
    if magic == b"P1":
        body = re.sub(rb"#[^\n]*", b"", data[pos:])
        bits = [c - 48 for c in body if c in (48, 49)]
        if len(bits) < width * height:
            raise InvalidInputError("truncated P1 pixel data")
        pix = np.array(bits[: width * height], dtype=np.uint8).reshape(height, width)
    else:
        # exactly one whitespace byte separates the header from the raster
        pos += 1
        stride = (width + 7) // 8
        if len(data) - pos < stride * height:
            raise InvalidInputError("truncated P4 pixel data")
        raw = np.frombuffer(data, dtype=np.uint8, count=stride * height, offset=pos)
        pix = np.unpackbits(raw.reshape(height, stride), axis=1)[:, :width]
    return Raster(pix)


def read_pbm(path: PathLike) -> Raster:
    with open(path, "rb") as fh:
        return parse_pbm(fh.read())


def format_pbm(raster: Raster, binary: bool = True) -> bytes:
    head = b"P4" if binary else b"P1"
    header = head + b"\n%d %d\n" % (raster.width, raster.height)
    if binary:
        return header + np.packbits(raster.pixels, axis=1).tobytes()
    lines = [b" ".join(b"1" if v else b"0" for v in row) for row in raster.pixels]
    return header + b"\n".join(lines) + b"\n"


def write_pbm(raster: Raster, path: PathLike, binary: bool = True) -> None:
    with open(path, "wb") as fh:
        fh.write(format_pbm(raster, binary=binary))


def write_ppm(rgb: np.ndarray, path: PathLike) -> None:
    """Write an ``(h, w, 3)`` uint8 array as binary P6."""
    rgb = np.asarray(rgb, dtype=np.uint8)
    h, w, _ = rgb.shape
    with open(path, "wb") as fh:
        fh.write(b"P6\n%d %d\n255\n" % (w, h))
        fh.write(rgb.tobytes())


def read_ppm(path: PathLike) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:2] != b"P6":
        raise InvalidInputError("not a binary PPM file")
    (w, h, _maxval), pos = _tokens(data, 2, 3)
    w, h = int(w), int(h)
    return np.frombuffer(data, dtype=np.uint8, count=w * h * 3, offset=pos + 1).reshape(h, w, 3)


# -------------------------------------------------------------------- RLEG


def format_rleg(grid: Grid) -> str:
    lines = [f"{RLEG_MAGIC} {grid.width} {grid.height}"]
    for y in range(1, grid.height + 1):
        lines.append(" ".join(str(int(v)) for v in grid.row(y)))
    return "\n".join(lines) + "\n"


def parse_rleg(text: str) -> Grid:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise InvalidInputError("empty RLEG document")
    head = lines[0].split()
    if len(head) != 3 or head[0] != RLEG_MAGIC:
        raise InvalidInputError(f"bad RLEG header: {lines[0]!r}")
    try:
        width, height = int(head[1]), int(head[2])
    except ValueError:
        raise InvalidInputError(f"bad RLEG header: {lines[0]!r}") from None
    if width <= 0 or height <= 0:
        raise InvalidInputError("RLEG width and height must be positive")
    body = lines[1:]
    if len(body) != height:
        raise InvalidInputError(f"RLEG header declares {height} rows, found {len(body)}")
    rows = []
    for j, line in enumerate(body, start=1):
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise CorruptGridError(f"row {j}: non-integer run length", row=j) from None
        if not rows[-1]:
            raise CorruptGridError(f"row {j}: empty", row=j)
    return Grid(width=width, runs=_pad(rows))


def read_rleg(path: PathLike) -> Grid:
    with open(path, "r", encoding="ascii", newline="") as fh:
        return parse_rleg(fh.read())


def write_rleg(grid: Grid, path: PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_rleg(grid))


def load_grid(path: PathLike) -> Grid:
    """Read an RLEG file or a PBM file (encoded on the fly), sniffing the magic."""
    with open(path, "rb") as fh:
        data = fh.read()
    if data.startswith(RLEG_MAGIC.encode()):
        return parse_rleg(data.decode("ascii"))
    if data[:2] in (b"P1", b"P4"):
        return encode(parse_pbm(data))
    raise InvalidInputError(f"{os.fspath(path)}: neither RLEG nor PBM")


def load_raster(path: PathLike) -> Raster:
    with open(path, "rb") as fh:
        data = fh.read()
    if data.startswith(RLEG_MAGIC.encode()):
        return decode(parse_rleg(data.decode("ascii")))
    return parse_pbm(data)
