"""Survey-table normalization: build, validate, transform, serialize."""

from .build import from_grid, from_matrix
from .csvio import from_csv_text, read_csv, to_csv_text, write_csv
from .model import (ColumnKind, ColumnRole, ColumnSpec, METADATA_LABELS,
                    SurveyTable, Violation)
from .rules import validate
from .transforms import (drop_column, drop_row, expand_legend, merge_columns,
                         merge_rows, rename_column, set_cell, set_column_kind,
                         set_reference_column, split_column, transpose,
                         with_legend)

__all__ = [
    "ColumnKind",
    "ColumnRole",
    "ColumnSpec",
    "METADATA_LABELS",
    "SurveyTable",
    "Violation",
    "drop_column",
    "drop_row",
    "expand_legend",
    "from_csv_text",
    "from_grid",
    "from_matrix",
    "merge_columns",
    "merge_rows",
    "read_csv",
    "rename_column",
    "set_cell",
    "set_column_kind",
    "set_reference_column",
    "split_column",
    "to_csv_text",
    "transpose",
    "validate",
    "with_legend",
    "write_csv",
]
