"""Concatenation of the page-parts of one table spread over several pages."""

from __future__ import annotations

from ..errors import ColumnCountMismatch
from .grid import TableGrid


def merge_multipage(parts: list[TableGrid]) -> TableGrid:
    """Append parts after part 1, dropping a first row that repeats part 1's
    header verbatim.  Parts must agree on column count."""
    if not parts:
        raise ValueError("nothing to merge")
    base = parts[0]
    header = [c.text for c in base.cells[0]] if base.n_rows else None
    rows = list(base.cells)
    for i, part in enumerate(parts[1:], start=2):
        if part.n_cols != base.n_cols:
            raise ColumnCountMismatch(
                f"part {i} has {part.n_cols} columns, part 1 has {base.n_cols}")
        part_rows = list(part.cells)
        if part_rows and header is not None and [c.text for c in part_rows[0]] == header:
            part_rows = part_rows[1:]
        rows.extend(part_rows)
    return TableGrid(cells=tuple(rows), source_region=base.source_region, method=base.method)
