"""Ruling-based segmentation: cell boundaries come from drawn border lines."""

from __future__ import annotations

from bisect import bisect_right

from ..errors import InsufficientRulings
from ..pdf.loader import MERGE_TOLERANCE, page_glyphs_in_region, page_rulings_in_region
from ..pdf.model import Orientation, Page, Region
from .grid import Cell, Method, TableGrid, make_cell


def _distinct_positions(values: list[float]) -> list[float]:
    positions: list[float] = []
    for v in sorted(values):
        if not positions or v - positions[-1] > MERGE_TOLERANCE:
            positions.append(v)
    return positions


def extract_lattice(page: Page, region: Region) -> TableGrid:
    """Segment using ruling lines; raises InsufficientRulings when the region
    does not contain at least two rulings in each direction (the caller is
    expected to fall back to the whitespace method)."""
    rulings = page_rulings_in_region(page, region)
    xs = _distinct_positions([r.position for r in rulings if r.orientation is Orientation.VERTICAL])
    ys = _distinct_positions([r.position for r in rulings if r.orientation is Orientation.HORIZONTAL])
    if len(xs) < 2 or len(ys) < 2:
        raise InsufficientRulings(
            f"{len(ys)} horizontal / {len(xs)} vertical rulings in region")

    ys_desc = list(reversed(ys))  # top edge first
    n_rows, n_cols = len(ys) - 1, len(xs) - 1

    buckets: list[list[list]] = [[[] for _ in range(n_cols)] for _ in range(n_rows)]
    for g in page_glyphs_in_region(page, region):
        cx, cy = g.center
        col = bisect_right(xs, cx) - 1
        if not 0 <= col < n_cols:
            continue
        row_from_bottom = bisect_right(ys, cy) - 1
        if not 0 <= row_from_bottom < n_rows:
            continue
        buckets[n_rows - 1 - row_from_bottom][col].append(g)

    rows: list[tuple[Cell, ...]] = []
    for r in range(n_rows):
        cells = []
        for c in range(n_cols):
            rect = (xs[c], ys_desc[r + 1], xs[c + 1], ys_desc[r])
            cells.append(make_cell(buckets[r][c], rect))
        rows.append(tuple(cells))
    return TableGrid(cells=tuple(rows), source_region=region, method=Method.LATTICE)
