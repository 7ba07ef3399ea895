"""Turning raw extraction grids into survey tables."""

from __future__ import annotations

import unicodedata

from ..errors import EmptyGrid
from ..extract.grid import TableGrid
from .model import SurveyTable, build_columns


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def from_matrix(matrix: list[list[str]]) -> SurveyTable:
    """Build a table from a full cell matrix whose row 0 is the header."""
    if not matrix:
        raise EmptyGrid("no rows")
    header = [_nfc(cell) for cell in matrix[0]]
    rows = tuple(tuple(_nfc(cell) for cell in row) for row in matrix[1:])
    return SurveyTable(columns=build_columns(header), rows=rows)


def from_grid(grid: TableGrid) -> SurveyTable:
    """Row 0 becomes the header; prefix and reference conventions applied."""
    if grid.n_rows < 1:
        raise EmptyGrid("grid has no rows")
    return from_matrix(grid.texts())
