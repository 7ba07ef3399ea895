"""Parsing and generating citation keys.

Two key styles occur in survey tables: bracketed/bare reference numbers and
author-year forms.  Author-year matching keys on the first author's surname
only, since many styles shorten multi-author works to "First et al.".
"""

from __future__ import annotations

import re
import unicodedata

from ..errors import MissingAuthorOrYear, UnrecognizedKeyFormat
from .model import BibEntry, CitationKey

_NUMERIC = re.compile(r"^[\[(]?\s*(\d+)\s*[\])]?\.?$")
_AUTHOR_YEAR = re.compile(
    r"""^(?P<names>[^\d()\[\]]+?)
        [\s,]*
        \(?\s*(?P<year>[12]\d{3})(?P<suffix>[a-z])?\s*\)?
        \.?$""",
    re.VERBOSE,
)
_ET_AL = re.compile(r"\bet\s+al\.?,?", re.IGNORECASE)
_INITIAL = re.compile(r"^[A-Z]\.?$")


def _clean(text: str) -> str:
    return re.sub(r"\s+", " ", unicodedata.normalize("NFC", text)).strip()


def first_surname(names: str) -> str:
    """Reduce an author-name block to the first author's surname."""
    names = _ET_AL.sub(" ", names)
    names = re.split(r"\s+(?:and|&)\s+|;", names, maxsplit=1)[0]
    first = names.split(",")[0]
    tokens = [t for t in first.split() if not _INITIAL.match(t.rstrip("."))]
    surname = " ".join(tokens) if tokens else first.strip()
    return _clean(surname).rstrip(".").lower()


def parse_citation_key(cell: str) -> CitationKey:
    """Parse a table cell into a citation key.

    Accepted forms: "[12]" / "12" / "(12)", and author-year variants like
    "Smith et al. (2010)", "Smith et al., 2010", "Smith and Jones 2010",
    "Smith 2010a".  Anything else raises UnrecognizedKeyFormat and goes to
    the manual-resolution queue.
    """
    text = _clean(cell)
    if not text:
        raise UnrecognizedKeyFormat("empty cell")

    m = _NUMERIC.match(text)
    if m:
        number = int(m.group(1))
        if number < 1:
            raise UnrecognizedKeyFormat(f"reference number {number} out of range")
        return CitationKey.numeric(number)

    m = _AUTHOR_YEAR.match(text)
    if m:
        surname = first_surname(m.group("names"))
        if surname and re.search(r"[^\W\d_]", surname):
            return CitationKey.author_year(
                surname, int(m.group("year")), m.group("suffix"))

    raise UnrecognizedKeyFormat(f"not a citation key: {cell!r}")


def generate_key(entry: BibEntry) -> CitationKey:
    """Key synthesized from metadata when the table carries none."""
    if not entry.authors or entry.year is None:
        raise MissingAuthorOrYear("need at least one author and a year")
    return CitationKey.generated(first_surname(entry.authors[0]), entry.year)
