"""The six formatting rules a survey table must satisfy before ingestion.

1. the first row is the header (every column has a label),
2. each row describes one reviewed paper (checked structurally: the
   reference cell holds a single citation key, not a list),
3. exactly one column has the Reference role,
4. every reference cell is non-empty,
5. resource columns are the ones whose raw header carried the "[R]" prefix
   (re-checked: no stored label still starts with the prefix),
6. with a legend attached, no cell still equals an unexpanded legend key.
"""

from __future__ import annotations

import re

from .model import ColumnRole, RESOURCE_PREFIX, SurveyTable, Violation

_KEY_LIST = re.compile(r"^\s*[\[(]?\d+\s*[,;]\s*\d+")


def validate(table: SurveyTable) -> list[Violation]:
    violations: list[Violation] = []

    for c, col in enumerate(table.columns):
        if not col.label:
            violations.append(Violation(1, col=c, message="column has no label"))
        if col.label.startswith(RESOURCE_PREFIX):
            violations.append(Violation(
                5, col=c, message="resource prefix left inside a column label"))

    ref_cols = [c for c, col in enumerate(table.columns)
                if col.role is ColumnRole.REFERENCE]
    if len(ref_cols) != 1:
        violations.append(Violation(
            3, message=f"{len(ref_cols)} reference columns, need exactly one"))
    else:
        ref = ref_cols[0]
        for r, row in enumerate(table.rows):
            cell = row[ref].strip()
            if not cell:
                violations.append(Violation(4, row=r, col=ref,
                                            message="reference cell is empty"))
            elif _KEY_LIST.match(cell):
                violations.append(Violation(
                    2, row=r, col=ref,
                    message="reference cell lists several citation keys"))

    legend = table.legend_map()
    if legend:
        for r, row in enumerate(table.rows):
            for c, cell in enumerate(row):
                if cell in legend:
                    violations.append(Violation(
                        6, row=r, col=c,
                        message=f"unexpanded legend abbreviation {cell!r}"))

    return violations
