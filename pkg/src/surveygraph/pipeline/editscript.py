"""Replayable edit scripts for table fixes.

One command per line, shell-style quoting, '#' comments.  Manual fixes made
through scripts stay reproducible: the same script against the same raw
extraction always yields the same table.

    transpose
    merge_rows A B [JOINER]
    drop_row N
    split_column N DELIM
    merge_columns N,M,... JOINER LABEL
    drop_column N
    rename_column N LABEL
    set_kind N resource|literal
    set_reference_column N
    set_cell ROW COL VALUE
    legend KEY=VALUE
    expand_legend
"""

from __future__ import annotations

import shlex

from ..errors import SurveyGraphError
from ..tableops import (ColumnKind, SurveyTable, drop_column, drop_row,
                        expand_legend, merge_columns, merge_rows,
                        rename_column, set_cell, set_column_kind,
                        set_reference_column, split_column, transpose,
                        with_legend)


def apply_script(table: SurveyTable, script: str) -> SurveyTable:
    for lineno, raw_line in enumerate(script.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            table = _apply_line(table, line)
        except SurveyGraphError:
            raise
        except Exception as exc:
            raise SurveyGraphError(f"edit script line {lineno}: {exc}") from exc
    return table


def _apply_line(table: SurveyTable, line: str) -> SurveyTable:
    parts = shlex.split(line)
    op, args = parts[0], parts[1:]
    if op == "transpose":
        return transpose(table)
    if op == "merge_rows":
        joiner = args[2] if len(args) > 2 else " "
        return merge_rows(table, int(args[0]), int(args[1]), joiner)
    if op == "drop_row":
        return drop_row(table, int(args[0]))
    if op == "split_column":
        return split_column(table, int(args[0]), args[1])
    if op == "merge_columns":
        cols = [int(c) for c in args[0].split(",")]
        return merge_columns(table, cols, args[1], args[2])
    if op == "drop_column":
        return drop_column(table, int(args[0]))
    if op == "rename_column":
        return rename_column(table, int(args[0]), args[1])
    if op == "set_kind":
        kind = ColumnKind.RESOURCE if args[1].lower() == "resource" else ColumnKind.LITERAL
        return set_column_kind(table, int(args[0]), kind)
    if op == "set_reference_column":
        return set_reference_column(table, int(args[0]))
    if op == "set_cell":
        return set_cell(table, int(args[0]), int(args[1]), args[2])
    if op == "legend":
        key, _, value = args[0].partition("=")
        if not key or not value:
            raise SurveyGraphError(f"legend entry needs KEY=VALUE, got {args[0]!r}")
        legend = table.legend_map()
        legend[key] = value
        return with_legend(table, legend)
    if op == "expand_legend":
        return expand_legend(table)
    raise SurveyGraphError(f"unknown edit command {op!r}")
