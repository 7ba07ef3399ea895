"""Table segmentation over page regions, plus merge and defect reporting."""

from .diagnose import ExtractionIssue, IssueKind, diagnose
from .grid import Cell, Method, TableGrid, grid_to_csv_text, write_grid_csv
from .lattice import extract_lattice
from .merge import merge_multipage
from .stream import extract_stream

__all__ = [
    "Cell",
    "ExtractionIssue",
    "IssueKind",
    "Method",
    "TableGrid",
    "diagnose",
    "extract_lattice",
    "extract_stream",
    "grid_to_csv_text",
    "merge_multipage",
    "write_grid_csv",
]
