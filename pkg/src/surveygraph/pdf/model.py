"""Layout primitives extracted from a PDF page.

Coordinates are PDF user-space points with the origin at the bottom-left of
the page and y increasing upward.  Everything downstream (regions, grids,
the HTTP page previews) uses this same space, so no conversions happen
anywhere else.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Orientation(enum.Enum):
    HORIZONTAL = "H"
    VERTICAL = "V"


@dataclass(frozen=True)
class PositionedGlyph:
    """One extracted character (or ligature) with its bounding box.

    ``baseline`` is the y coordinate of the text baseline the glyph sits on;
    row clustering uses it directly instead of re-deriving it from the box.
    """

    text: str
    x0: float
    y0: float
    x1: float
    y1: float
    font_size: float
    baseline: float

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("glyph text must be non-empty")
        if self.x0 > self.x1 or self.y0 > self.y1:
            raise ValueError("glyph box is inverted")

    @property
    def center(self) -> tuple[float, float]:
        return ((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0)

    @property
    def width(self) -> float:
        return self.x1 - self.x0


@dataclass(frozen=True)
class Ruling:
    """A stroked horizontal or vertical line segment.

    ``position`` is the fixed coordinate (y for horizontal, x for vertical);
    ``start``/``end`` span the varying coordinate.
    """

    orientation: Orientation
    position: float
    start: float
    end: float
    thickness: float = 1.0

    def __post_init__(self) -> None:
        if self.start >= self.end:
            raise ValueError("ruling span is empty or inverted")

    @property
    def length(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class Page:
    index: int
    width: float
    height: float
    glyphs: tuple[PositionedGlyph, ...] = ()
    rulings: tuple[Ruling, ...] = ()

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("page must have positive dimensions")


@dataclass(frozen=True)
class Document:
    """Immutable snapshot of a loaded PDF: safe to share across threads."""

    pages: tuple[Page, ...]
    source_path: str

    @property
    def page_count(self) -> int:
        return len(self.pages)


@dataclass(frozen=True)
class Region:
    """A caller-selected rectangle on one page."""

    page_index: int
    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self) -> None:
        if self.x0 >= self.x1 or self.y0 >= self.y1:
            raise ValueError("region rectangle is empty or inverted")

    def contains_point(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1


@dataclass
class PageBuild:
    """Mutable accumulator used only while interpreting a content stream."""

    glyphs: list[PositionedGlyph] = field(default_factory=list)
    segments: list[tuple[float, float, float, float, float]] = field(default_factory=list)
    saw_image: bool = False
