"""Citation keys, bibliography entries, and per-row link outcomes."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from typing import Optional

_DOI_SHAPE = re.compile(r"^10\.\S+/\S+$")


class KeyVariant(enum.Enum):
    NUMERIC = "numeric"
    AUTHOR_YEAR = "author_year"
    GENERATED = "generated"


@dataclass(frozen=True)
class CitationKey:
    """In-text pointer at a reference-list entry.

    Numeric keys carry ``number``; author-year and generated keys carry a
    lowercased ``surname`` and ``year`` (plus an optional one-letter suffix
    for author-year).  A generated key is one we synthesized from metadata
    rather than parsed from the table, so its canonical text form is the
    author-year form.
    """

    variant: KeyVariant
    number: Optional[int] = None
    surname: Optional[str] = None
    year: Optional[int] = None
    suffix: Optional[str] = None

    def __post_init__(self) -> None:
        if self.variant is KeyVariant.NUMERIC:
            if self.number is None or self.number < 1:
                raise ValueError("numeric key needs number >= 1")
        else:
            if not self.surname:
                raise ValueError("author key needs a surname")
            if self.year is None or not 1000 <= self.year <= 2999:
                raise ValueError("author key needs a plausible year")
            if self.suffix is not None and not re.fullmatch(r"[a-z]", self.suffix):
                raise ValueError("suffix must be one lowercase letter")

    @classmethod
    def numeric(cls, number: int) -> "CitationKey":
        return cls(variant=KeyVariant.NUMERIC, number=number)

    @classmethod
    def author_year(cls, surname: str, year: int,
                    suffix: Optional[str] = None) -> "CitationKey":
        return cls(variant=KeyVariant.AUTHOR_YEAR, surname=surname,
                   year=year, suffix=suffix)

    @classmethod
    def generated(cls, surname: str, year: int) -> "CitationKey":
        return cls(variant=KeyVariant.GENERATED, surname=surname, year=year)

    def render(self) -> str:
        """Canonical text form: "[n]" or "surname, year[suffix]"."""
        if self.variant is KeyVariant.NUMERIC:
            return f"[{self.number}]"
        return f"{self.surname}, {self.year}{self.suffix or ''}"


@dataclass(frozen=True)
class BibEntry:
    """One bibliography entry; optional fields stay absent, never invented."""

    raw: str
    key: Optional[CitationKey] = None
    title: Optional[str] = None
    authors: tuple[str, ...] = ()
    year: Optional[int] = None
    month: Optional[int] = None
    doi: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.raw:
            raise ValueError("raw citation text must be non-empty")
        if self.doi is not None and not _DOI_SHAPE.match(self.doi):
            raise ValueError(f"doi {self.doi!r} does not look like 10.x/y")
        if self.month is not None and not 1 <= self.month <= 12:
            raise ValueError("month must be 1..12")

    def merged_with(self, other: "BibEntry") -> "BibEntry":
        """Fill absent fields from ``other``; present fields never change."""
        return replace(
            self,
            title=self.title or other.title,
            authors=self.authors or other.authors,
            year=self.year if self.year is not None else other.year,
            month=self.month if self.month is not None else other.month,
            doi=self.doi or other.doi,
        )


@dataclass(frozen=True)
class LinkResult:
    """Outcome of resolving one table row's citation key."""

    row_index: int
    key_text: str
    entry: Optional[BibEntry] = None

    @property
    def linked(self) -> bool:
        return self.entry is not None
