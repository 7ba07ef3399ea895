"""Appending the five bibliographic metadata columns to a survey table."""

from __future__ import annotations

from ..errors import UnresolvedRows
from ..tableops.model import (ColumnKind, ColumnRole, ColumnSpec,
                              METADATA_LABELS, SurveyTable)
from .model import LinkResult


def append_metadata_columns(table: SurveyTable, links: list[LinkResult]) -> SurveyTable:
    """Add Title, Authors, Month, Year, DOI columns filled from the links.

    Every row must be covered by exactly one linked result; otherwise
    UnresolvedRows lists what still needs manual resolution.  Absent fields
    become empty cells; no pre-existing cell changes.
    """
    by_row = {link.row_index: link for link in links}
    unresolved = [r for r in range(table.n_rows)
                  if r not in by_row or not by_row[r].linked]
    if unresolved:
        raise UnresolvedRows(unresolved)

    new_cols = table.columns + tuple(
        ColumnSpec(label=label, kind=ColumnKind.LITERAL, role=ColumnRole.METADATA)
        for label in METADATA_LABELS)
    new_rows = []
    for r, row in enumerate(table.rows):
        entry = by_row[r].entry
        new_rows.append(row + (
            entry.title or "",
            "; ".join(entry.authors),
            str(entry.month) if entry.month is not None else "",
            str(entry.year) if entry.year is not None else "",
            entry.doi or "",
        ))
    return SurveyTable(columns=new_cols, rows=tuple(new_rows), legend=table.legend)
