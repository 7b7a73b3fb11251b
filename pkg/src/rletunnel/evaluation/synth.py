"""Deterministic synthetic handwritten-like pages with construction ground truth.

Pages are rows of pseudo-glyph blobs (filled rectangles and ellipses) laid
out in words along slightly skewed baselines.  Optional stressors:

* ascender/descender stems poking into the inter-line gaps,
* touching bridges, thin vertical bars joining two adjacent lines,
* false bands: a horizontal slit through the first word of a line, which
  makes the left margin look like a gap inside the text line.

Everything is drawn from ``numpy.random.default_rng(seed)``, so the same
``(spec, seed)`` always yields the same raster.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from typing import Optional

import numpy as np

from ..codec import Raster
from ..exceptions import InvalidSpecError

REFERENCE_PITCH = 100
REFERENCE_T = 20


@dataclass(frozen=True)
class CorpusSpec:
    lines: int = 5
    gap_px: int = 16
    line_px: int = 24
    width: int = 480
    margin_px: int = 24
    skew_deg: float = 0.0
    touch_prob: float = 0.0
    extension: float = 0.0
    false_gaps: int = 0
    touch_gaps: tuple = ()
    ragged: float = 0.2
    seed: int = 0
    pages: int = 1

    def __post_init__(self):
        if self.gap_px <= 0:
            raise InvalidSpecError(f"gap_px must be positive, got {self.gap_px}")
        if not 2 <= self.lines <= 30:
            raise InvalidSpecError(f"lines must be within 2..30, got {self.lines}")
        if not 0 <= self.skew_deg <= 3:
            raise InvalidSpecError(f"skew_deg must be within 0..3, got {self.skew_deg}")
        if not 0 <= self.touch_prob <= 0.3 and not self.touch_gaps:
            raise InvalidSpecError(f"touch_prob must be within 0..0.3, got {self.touch_prob}")
        if not 0 <= self.extension <= 2:
            raise InvalidSpecError(f"extension must be within 0..2, got {self.extension}")
        if self.line_px < 12:
            raise InvalidSpecError("line_px must be at least 12")
        if self.false_gaps > self.lines - 1 or self.false_gaps < 0:
            raise InvalidSpecError("false_gaps must be within 0..lines-1")
        if self.width < 2 * self.margin_px + 60:
            raise InvalidSpecError("width too small for the margins")
        if self.pages < 1:
            raise InvalidSpecError("pages must be >= 1")
        object.__setattr__(self, "touch_gaps", tuple(int(k) for k in self.touch_gaps))
        if any(not 1 <= k < self.lines for k in self.touch_gaps):
            raise InvalidSpecError("touch_gaps entries must name interior gaps 1..lines-1")

    @property
    def pitch(self) -> int:
        return self.line_px + self.gap_px

    @property
    def window(self) -> int:
        """Search half-window equivalent to t=20 at a 100 px line pitch."""
        return scaled_window(self.pitch)

    @classmethod
    def from_text(cls, text: str) -> "CorpusSpec":
        """Parse ``key=value`` lines; blank lines and ``#`` comments are ignored."""
        known = {f.name: f for f in fields(cls)}
        kwargs = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InvalidSpecError(f"line {lineno}: expected key=value, got {raw!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in known:
                raise InvalidSpecError(f"line {lineno}: unknown key {key!r}")
            kwargs[key] = _coerce(known[key].default, value, key)
        return cls(**kwargs)

    def to_text(self) -> str:
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = ",".join(map(str, v))
            out.append(f"{f.name}={v}")
        return "\n".join(out) + "\n"


def _coerce(default, value: str, key: str):
    try:
        if isinstance(default, tuple):
            return tuple(int(v) for v in value.split(",") if v.strip())
        if isinstance(default, bool):
            return value.lower() in ("1", "true", "yes")
        return type(default)(value)
    except ValueError:
        raise InvalidSpecError(f"bad value for {key}: {value!r}") from None


def scaled_window(pitch: float) -> int:
    return max(1, round(REFERENCE_T * pitch / REFERENCE_PITCH))


@dataclass
class GroundTruth:
    """Construction truth for one page.

    ``gap_polylines[k]`` is the centre row (1-based, float) of gap ``k`` at
    every pixel column; gap 0 is the top margin and the last gap the bottom
    margin, so a page holds ``line_count + 1`` gaps.
    """

    line_count: int
    width: int
    height: int
    gap_polylines: list = field(default_factory=list)
    gap_heights: list = field(default_factory=list)
    row_labels: list = field(default_factory=list)
    bridges: list = field(default_factory=list)
    false_bands: list = field(default_factory=list)

    @property
    def gap_count(self) -> int:
        return len(self.gap_polylines)

    @property
    def default_match_tolerance(self) -> float:
        return float(np.median(self.gap_heights)) / 2


def _ellipse(h: int, w: int) -> np.ndarray:
    yy = (np.arange(h) + 0.5 - h / 2) / (h / 2)
    xx = (np.arange(w) + 0.5 - w / 2) / (w / 2)
    return (yy[:, None] ** 2 + xx[None, :] ** 2 <= 1.0).astype(np.uint8)


def generate_page(spec: CorpusSpec, seed: Optional[int] = None):
    """Render one page; returns ``(Raster, GroundTruth)``."""
    if seed is None:
        seed = spec.seed
    rng = np.random.default_rng(seed)
    w = spec.width
    angle = math.radians(rng.uniform(-spec.skew_deg, spec.skew_deg)) if spec.skew_deg else 0.0
    slopes = []
    for _ in range(spec.lines):
        jitter = math.radians(rng.uniform(-0.1, 0.1)) if spec.skew_deg else 0.0
        slopes.append(math.tan(angle + jitter))
    drift = int(math.ceil(max(abs(s) for s in slopes) * w))
    ext_px = int(math.ceil(spec.extension * spec.gap_px))
    top = max(spec.gap_px, 12) + drift + ext_px
    height = top + spec.lines * spec.pitch - spec.gap_px + top
    img = np.zeros((height, w), dtype=np.uint8)

    def line_top(k: int, x: float) -> float:
        return top + k * spec.pitch + slopes[k] * x

    false_lines = set()
    if spec.false_gaps:
        false_lines = set(rng.choice(np.arange(1, spec.lines), size=spec.false_gaps, replace=False).tolist())

    glyphs_per_line = []
    for k in range(spec.lines):
        x = spec.margin_px + int(rng.integers(0, 3))
        end = w - spec.margin_px - int(rng.uniform(0, spec.ragged) * w)
        glyphs = []
        first_word_end = None
        word = 0
        while True:
            n_glyphs = int(rng.integers(2, 8))
            for g in range(n_glyphs):
                gw = int(rng.integers(6, 15))
                if x + gw > end:
                    break
                gtop = int(round(line_top(k, x + gw / 2)))
                a = 0 if (word == 0 and g == 0) else int(rng.integers(0, 4))
                b = int(rng.integers(0, 4))
                gh = spec.line_px - a - b
                shape = (
                    np.ones((gh, gw), dtype=np.uint8)
                    if (word == 0 and g == 0) or rng.random() < 0.5
                    else _ellipse(gh, gw)
                )
                y0 = gtop + a
                img[y0 : y0 + gh, x : x + gw] |= shape
                glyphs.append((x, gw, y0, gh))
                if spec.extension > 0 and rng.random() < 0.2:
                    stem = int(rng.integers(2, 4))
                    length = int(round(spec.extension * spec.gap_px * rng.uniform(0.5, 1.0)))
                    sx = x + gw // 2 - stem // 2
                    if rng.random() < 0.5:
                        img[max(0, y0 - length) : y0, sx : sx + stem] = 1
                    else:
                        img[y0 + gh : min(height, y0 + gh + length), sx : sx + stem] = 1
                x += gw + int(rng.integers(2, 5))
            else:
                if word == 0:
                    first_word_end = x
                word += 1
                x += int(rng.integers(8, 17))
                if x + 6 <= end:
                    continue
            break
        if first_word_end is None:
            first_word_end = x
        glyphs_per_line.append((glyphs, first_word_end))

    bridges = []
    for k in range(spec.lines - 1):
        forced = (k + 1) in spec.touch_gaps
        if not forced and not (spec.touch_prob and rng.random() < spec.touch_prob):
            continue
        glyphs = glyphs_per_line[k][0]
        lo, hi = len(glyphs) // 4, max(len(glyphs) // 4 + 1, 3 * len(glyphs) // 4)
        gx, gw, y0, gh = glyphs[int(rng.integers(lo, hi))]
        bw = int(rng.integers(2, 4))
        bx = gx + gw // 2 - bw // 2
        y_from = y0 + gh // 2
        y_to = int(round(line_top(k + 1, bx))) + spec.line_px // 3
        img[y_from:y_to, bx : bx + bw] = 1
        bridges.append((k + 1, bx + 1, bx + bw))

    false_bands = []
    for k in sorted(false_lines):
        glyphs, first_word_end = glyphs_per_line[k]
        if not glyphs:
            continue
        y_s = glyphs[0][2] + 2
        img[y_s : y_s + 4, :first_word_end] = 0
        false_bands.append((k + 1, y_s + 1, y_s + 4))

    xs = np.arange(w) + 0.5
    polylines = []
    gap_heights = []
    for k in range(spec.lines + 1):
        upper = np.full(w, 0.0) if k == 0 else line_top(k - 1, xs) + spec.line_px - 1
        lower = np.full(w, float(height - 1)) if k == spec.lines else line_top(k, xs)
        # 1-based rows
        polylines.append((upper + lower) / 2 + 1)
        gap_heights.append(float(np.mean(lower - upper)))

    mid = (w + 1) // 2 - 1
    centres = sorted(float(p[mid]) for p in polylines)
    labels = [int(np.searchsorted(centres, y, side="right")) for y in range(1, height + 1)]

    gt = GroundTruth(
        line_count=spec.lines,
        width=w,
        height=height,
        gap_polylines=polylines,
        gap_heights=gap_heights,
        row_labels=labels,
        bridges=bridges,
        false_bands=false_bands,
    )
    return Raster(img), gt


def generate_corpus(spec: CorpusSpec):
    """Yield ``(page_id, raster, ground_truth)`` for ``spec.pages`` pages."""
    for i in range(spec.pages):
        raster, gt = generate_page(spec, spec.seed + i)
        yield i, raster, gt


def sweep_specs(base: CorpusSpec, n_pages: int, seed: int = 0):
    """Per-page specs sweeping skew over 0..3 degrees and touch probability over 0..0.3."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n_pages):
        out.append(
            replace(
                base,
                skew_deg=round(3.0 * i / max(1, n_pages - 1), 4),
                touch_prob=round(float(rng.choice([0.0, 0.1, 0.2, 0.3])), 2),
                lines=int(rng.integers(3, 8)),
                seed=seed * 100003 + i,
            )
        )
    return out
