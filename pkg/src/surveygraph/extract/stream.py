"""Whitespace-based segmentation: columns come from vertical gaps in the text.

Column detection: a vertical channel counts as a separator when it is wider
than the median glyph width and free of glyphs in at least 90% of the rows.
Both thresholds are declared here, not inherited from any existing tool.
"""

from __future__ import annotations

from bisect import bisect_right
from statistics import median

from ..errors import EmptyRegion
from ..pdf.loader import page_glyphs_in_region
from ..pdf.model import Page, PositionedGlyph, Region
from .grid import Cell, Method, TableGrid, cluster_baselines, make_cell

GAP_WIDTH_FACTOR = 1.0     # channel must exceed this multiple of median glyph width
ROW_CLEARANCE = 0.90       # fraction of rows a channel must be empty across


def _merged_intervals(glyphs: list[PositionedGlyph]) -> list[tuple[float, float]]:
    spans = sorted((g.x0, g.x1) for g in glyphs)
    merged: list[list[float]] = []
    for lo, hi in spans:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return [(lo, hi) for lo, hi in merged]


def _column_channels(rows: list[list[PositionedGlyph]], min_width: float) -> list[float]:
    """Return x positions (channel midpoints) that separate columns."""
    row_intervals = [_merged_intervals(row) for row in rows]
    events = sorted({x for intervals in row_intervals for lo_hi in intervals for x in lo_hi})
    if len(events) < 2:
        return []
    allowed_covered = int((1.0 - ROW_CLEARANCE) * len(rows) + 1e-9)

    def coverage(lo: float, hi: float) -> int:
        count = 0
        for intervals in row_intervals:
            if any(s < hi and e > lo for s, e in intervals):
                count += 1
        return count

    # mark inter-event slices as open/blocked, then merge open runs
    channels: list[tuple[float, float]] = []
    run_start = None
    for i in range(len(events) - 1):
        lo, hi = events[i], events[i + 1]
        open_slice = hi > lo and coverage(lo, hi) <= allowed_covered
        if open_slice and run_start is None:
            run_start = lo
        elif not open_slice and run_start is not None:
            channels.append((run_start, lo))
            run_start = None
    if run_start is not None:
        channels.append((run_start, events[-1]))

    # interior channels wider than the threshold separate columns
    return [(lo + hi) / 2.0
            for lo, hi in channels
            if hi - lo > min_width and lo > events[0] and hi < events[-1]]


def extract_stream(page: Page, region: Region) -> TableGrid:
    """Segment from whitespace; raises EmptyRegion when no glyphs are inside."""
    glyphs = page_glyphs_in_region(page, region)
    if not glyphs:
        raise EmptyRegion("no glyphs in region")

    rows = cluster_baselines(glyphs)
    med_width = median(g.width for g in glyphs)
    boundaries = _column_channels(rows, GAP_WIDTH_FACTOR * med_width)
    n_cols = len(boundaries) + 1

    grid_rows: list[tuple[Cell, ...]] = []
    for row in rows:
        buckets: list[list[PositionedGlyph]] = [[] for _ in range(n_cols)]
        for g in row:
            buckets[bisect_right(boundaries, g.center[0])].append(g)
        top = max(g.y1 for g in row)
        bottom = min(g.y0 for g in row)
        edges = [region.x0] + boundaries + [region.x1]
        cells = [make_cell(bucket, (edges[i], bottom, edges[i + 1], top))
                 for i, bucket in enumerate(buckets)]
        grid_rows.append(tuple(cells))
    return TableGrid(cells=tuple(grid_rows), source_region=region, method=Method.STREAM)
