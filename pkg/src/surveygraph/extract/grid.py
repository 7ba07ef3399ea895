"""Cell grids produced by table segmentation, prior to any normalization."""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..pdf.model import PositionedGlyph, Region

ROW_TOLERANCE = 2.0        # baselines within this many points share a row
WORD_GAP_FACTOR = 0.25     # gap > factor * font_size inserts a space


class Method(enum.Enum):
    STREAM = "stream"
    LATTICE = "lattice"


@dataclass(frozen=True)
class Cell:
    """One grid cell; ``bbox`` is the tight union of its glyph boxes when it
    has any text, otherwise the geometric cell rectangle."""

    text: str
    bbox: tuple[float, float, float, float]
    glyph_count: int

    def __post_init__(self) -> None:
        if (self.text == "") != (self.glyph_count == 0):
            raise ValueError("text must be empty exactly when the cell has no glyphs")


@dataclass(frozen=True)
class TableGrid:
    cells: tuple[tuple[Cell, ...], ...]
    source_region: Region
    method: Method

    def __post_init__(self) -> None:
        widths = {len(row) for row in self.cells}
        if len(widths) > 1:
            raise ValueError("grid is not rectangular")

    @property
    def n_rows(self) -> int:
        return len(self.cells)

    @property
    def n_cols(self) -> int:
        return len(self.cells[0]) if self.cells else 0

    def texts(self) -> list[list[str]]:
        return [[c.text for c in row] for row in self.cells]


def cluster_baselines(glyphs: Iterable[PositionedGlyph],
                      tolerance: float = ROW_TOLERANCE) -> list[list[PositionedGlyph]]:
    """Group glyphs into baseline rows, top to bottom."""
    ordered = sorted(glyphs, key=lambda g: (-g.baseline, g.x0))
    rows: list[list[PositionedGlyph]] = []
    anchor = None
    for g in ordered:
        if anchor is None or anchor - g.baseline > tolerance:
            rows.append([g])
            anchor = g.baseline
        else:
            rows[-1].append(g)
    for row in rows:
        row.sort(key=lambda g: (g.x0, g.x1))
    return rows


def glyph_run_text(glyphs: Sequence[PositionedGlyph]) -> str:
    """Join one baseline run, re-inserting spaces at word-sized gaps."""
    parts: list[str] = []
    prev = None
    for g in glyphs:
        if prev is not None and g.x0 - prev.x1 > WORD_GAP_FACTOR * prev.font_size:
            parts.append(" ")
        parts.append(g.text)
        prev = g
    return "".join(parts)


def make_cell(glyphs: Sequence[PositionedGlyph],
              empty_bbox: tuple[float, float, float, float]) -> Cell:
    """Assemble a cell from its glyphs; multi-baseline content joins with newlines."""
    if not glyphs:
        return Cell(text="", bbox=empty_bbox, glyph_count=0)
    lines = [glyph_run_text(row) for row in cluster_baselines(glyphs)]
    bbox = (min(g.x0 for g in glyphs), min(g.y0 for g in glyphs),
            max(g.x1 for g in glyphs), max(g.y1 for g in glyphs))
    return Cell(text="\n".join(lines), bbox=bbox, glyph_count=len(glyphs))


def grid_to_csv_text(grid: TableGrid) -> str:
    """RFC 4180 serialization with LF line endings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in grid.texts():
        writer.writerow(row)
    return buf.getvalue()


def write_grid_csv(grid: TableGrid, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(grid_to_csv_text(grid))
