"""Pure table transforms; the building blocks every manual fix composes from.

Row indices are data-row indices (the header is not row 0 here).  Transforms
never mutate their input.  Flattening a multidimensional table is done by
composing split/merge/transpose rather than by a dedicated operation, so the
human stays in control of each step.
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

from ..errors import IndexOutOfRange, MergeShapeMismatch, SurveyGraphError
from .build import from_matrix
from .model import ColumnKind, ColumnRole, ColumnSpec, SurveyTable


def _check_col(table: SurveyTable, col: int) -> None:
    if not 0 <= col < table.n_cols:
        raise IndexOutOfRange(f"column {col} of {table.n_cols}")


def _check_row(table: SurveyTable, row: int) -> None:
    if not 0 <= row < table.n_rows:
        raise IndexOutOfRange(f"row {row} of {table.n_rows}")


def transpose(table: SurveyTable) -> SurveyTable:
    """Transpose the full cell matrix (header included).

    Column kinds and roles are re-derived from the new header texts, so the
    label conventions ("[R] " prefix, "Reference") are the thing that
    survives a transpose, not manually assigned roles.
    """
    matrix = table.matrix()
    flipped = [list(row) for row in zip(*matrix)]
    out = from_matrix(flipped)
    return SurveyTable(columns=out.columns, rows=out.rows, legend=table.legend)


def set_cell(table: SurveyTable, row: int, col: int, value: str) -> SurveyTable:
    _check_row(table, row)
    _check_col(table, col)
    rows = [list(r) for r in table.rows]
    rows[row][col] = value
    return SurveyTable(columns=table.columns,
                       rows=tuple(tuple(r) for r in rows), legend=table.legend)


def rename_column(table: SurveyTable, col: int, label: str) -> SurveyTable:
    _check_col(table, col)
    cols = list(table.columns)
    cols[col] = ColumnSpec(label=label, kind=cols[col].kind, role=cols[col].role)
    return SurveyTable(columns=tuple(cols), rows=table.rows, legend=table.legend)


def set_column_kind(table: SurveyTable, col: int, kind: ColumnKind) -> SurveyTable:
    _check_col(table, col)
    cols = list(table.columns)
    cols[col] = ColumnSpec(label=cols[col].label, kind=kind, role=cols[col].role)
    return SurveyTable(columns=tuple(cols), rows=table.rows, legend=table.legend)


def merge_rows(table: SurveyTable, row_a: int, row_b: int, joiner: str = " ") -> SurveyTable:
    """Fold row_b into row_a cell-by-cell; the usual repair for wrapped lines."""
    _check_row(table, row_a)
    _check_row(table, row_b)
    if row_a == row_b:
        raise MergeShapeMismatch("cannot merge a row into itself")
    rows = [list(r) for r in table.rows]
    merged = []
    for a, b in zip(rows[row_a], rows[row_b]):
        if a and b:
            merged.append(f"{a}{joiner}{b}")
        else:
            merged.append(a or b)
    rows[row_a] = merged
    del rows[row_b]
    return SurveyTable(columns=table.columns,
                       rows=tuple(tuple(r) for r in rows), legend=table.legend)


def drop_row(table: SurveyTable, row: int) -> SurveyTable:
    _check_row(table, row)
    rows = [r for i, r in enumerate(table.rows) if i != row]
    return SurveyTable(columns=table.columns, rows=tuple(rows), legend=table.legend)


def split_column(table: SurveyTable, col: int, delimiter: str) -> SurveyTable:
    """Split at the first occurrence of the delimiter into two columns."""
    _check_col(table, col)
    if not delimiter:
        raise SurveyGraphError("delimiter must be non-empty")
    spec = table.columns[col]
    left = ColumnSpec(label=f"{spec.label} 1", kind=spec.kind, role=spec.role)
    right = ColumnSpec(label=f"{spec.label} 2", kind=spec.kind, role=ColumnRole.DATA)
    cols = list(table.columns)
    cols[col:col + 1] = [left, right]
    rows = []
    for row in table.rows:
        head, _, tail = row[col].partition(delimiter)
        cells = list(row)
        cells[col:col + 1] = [head.strip(), tail.strip()]
        rows.append(tuple(cells))
    return SurveyTable(columns=tuple(cols), rows=tuple(rows), legend=table.legend)


def merge_columns(table: SurveyTable, cols: Sequence[int], joiner: str,
                  new_label: str) -> SurveyTable:
    """Join several columns into one, placed where the first of them was."""
    if len(cols) < 2 or len(set(cols)) != len(cols):
        raise MergeShapeMismatch("need at least two distinct columns")
    for c in cols:
        _check_col(table, c)
    anchor = cols[0]
    role = ColumnRole.REFERENCE if any(
        table.columns[c].role is ColumnRole.REFERENCE for c in cols) else ColumnRole.DATA
    merged_spec = ColumnSpec(label=new_label, kind=table.columns[anchor].kind, role=role)
    drop = set(cols)
    new_cols = []
    for i, spec in enumerate(table.columns):
        if i == anchor:
            new_cols.append(merged_spec)
        elif i not in drop:
            new_cols.append(spec)
    rows = []
    for row in table.rows:
        joined = joiner.join(row[c] for c in cols if row[c])
        cells = [joined if i == anchor else v
                 for i, v in enumerate(row) if i == anchor or i not in drop]
        rows.append(tuple(cells))
    return SurveyTable(columns=tuple(new_cols), rows=tuple(rows), legend=table.legend)


def drop_column(table: SurveyTable, col: int) -> SurveyTable:
    _check_col(table, col)
    cols = tuple(spec for i, spec in enumerate(table.columns) if i != col)
    rows = tuple(tuple(v for i, v in enumerate(row) if i != col) for row in table.rows)
    return SurveyTable(columns=cols, rows=rows, legend=table.legend)


def set_reference_column(table: SurveyTable, col: int) -> SurveyTable:
    """Make exactly this column the reference column."""
    _check_col(table, col)
    cols = []
    for i, spec in enumerate(table.columns):
        if i == col:
            cols.append(ColumnSpec(label=spec.label, kind=spec.kind,
                                   role=ColumnRole.REFERENCE))
        elif spec.role is ColumnRole.REFERENCE:
            cols.append(ColumnSpec(label=spec.label, kind=spec.kind, role=ColumnRole.DATA))
        else:
            cols.append(spec)
    return SurveyTable(columns=tuple(cols), rows=table.rows, legend=table.legend)


def with_legend(table: SurveyTable, legend: Optional[Mapping[str, str]]) -> SurveyTable:
    entries = tuple(sorted(legend.items())) if legend else None
    return SurveyTable(columns=table.columns, rows=table.rows, legend=entries)


def expand_legend(table: SurveyTable) -> SurveyTable:
    """Replace whole-cell matches of legend keys with their expansions.

    Matching is whole-cell and case-sensitive: survey legends map discrete
    codes, and substring substitution would corrupt prose cells.
    """
    legend = table.legend_map()
    if not legend:
        raise SurveyGraphError("table has no legend to expand")
    rows = tuple(tuple(legend.get(cell, cell) for cell in row) for row in table.rows)
    return SurveyTable(columns=table.columns, rows=rows, legend=table.legend)
