"""Exception types shared across the pipeline.

Every error that callers are expected to branch on gets its own class so
`except` clauses stay narrow.  Errors that merely signal "this row/item needs
a human" carry enough context to queue the item for manual handling.
"""

from __future__ import annotations


class SurveyGraphError(Exception):
    """Base class for all errors raised by this package."""


# --- PDF loading -----------------------------------------------------------

class FileUnreadable(SurveyGraphError):
    """The path does not exist or cannot be opened for reading."""


class NotAPdf(SurveyGraphError):
    """The file lacks a PDF header or is structurally unparseable."""


class EncryptedPdf(SurveyGraphError):
    """The document is encrypted and must be unlocked externally first."""


class NoTextLayer(SurveyGraphError):
    """The document draws images but no text anywhere (raster-only scan)."""


class PageOutOfRange(SurveyGraphError):
    """A region names a page index the document does not have."""


# --- table extraction ------------------------------------------------------

class InsufficientRulings(SurveyGraphError):
    """Region has fewer than 2 horizontal or 2 vertical rulings; the
    whitespace-based extractor must be used instead."""


class EmptyRegion(SurveyGraphError):
    """Region contains no glyphs at all."""


class ColumnCountMismatch(SurveyGraphError):
    """Multi-page parts disagree on column count; needs manual reformatting."""


# --- table formatting ------------------------------------------------------

class EmptyGrid(SurveyGraphError):
    """A grid without any rows cannot become a table."""


class IndexOutOfRange(SurveyGraphError):
    """A transform referenced a row or column index that does not exist."""


class MergeShapeMismatch(SurveyGraphError):
    """Rows/columns selected for a merge do not have compatible shapes."""


class CsvParseError(SurveyGraphError):
    """The file is not parseable as RFC 4180 CSV."""


# --- reference extraction --------------------------------------------------

class NoReferenceSection(SurveyGraphError):
    """No References/Bibliography heading found; all rows need manual entry."""


class UnrecognizedKeyFormat(SurveyGraphError):
    """Cell text is neither a numeric nor an author-year citation key."""


class MissingAuthorOrYear(SurveyGraphError):
    """Key generation needs at least one author and a year."""


class ServiceUnavailable(SurveyGraphError):
    """The metadata service could not be reached; safe to retry."""


class NoMatch(SurveyGraphError):
    """The metadata service had no record above the similarity threshold."""


class UnresolvedRows(SurveyGraphError):
    """Some rows are still NotFound; carries their indices."""

    def __init__(self, rows: list[int]):
        super().__init__(f"rows not resolved: {rows}")
        self.rows = rows


# --- graph store -----------------------------------------------------------

class EmptyLabel(SurveyGraphError):
    """Resource labels must be non-empty after normalization."""


class UnresolvedReference(SurveyGraphError):
    """Row cannot be ingested before its reference is resolved."""


class UnknownComparison(SurveyGraphError):
    """Comparison id does not exist in the store."""


class MissingTitle(SurveyGraphError):
    """Settings entry lacks the comparison title."""


class MissingSourceReference(SurveyGraphError):
    """Settings entry lacks the survey-article reference."""


class StoreCorrupt(SurveyGraphError):
    """Store file is missing its magic header or contains a bad record."""


# --- pipeline --------------------------------------------------------------

class AbortedByUser(SurveyGraphError):
    """Interactive prompt ended without an answer; the row stays unresolved."""
