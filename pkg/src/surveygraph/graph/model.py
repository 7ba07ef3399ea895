"""Value types of the knowledge graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass(frozen=True)
class Resource:
    id: str
    label: str
    classes: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Predicate:
    id: str
    label: str


@dataclass(frozen=True)
class Literal:
    value: str


@dataclass(frozen=True)
class Statement:
    subject: str                      # resource id
    predicate: str                    # predicate id
    object: Union[str, Literal]       # resource id or literal value


@dataclass
class Comparison:
    """View of one imported survey table inside the graph."""

    id: str
    title: str
    source_reference: str
    contributions: list[str] = field(default_factory=list)


# Classes used by the ingestion schema.
CLASS_PAPER = "Paper"
CLASS_CONTRIBUTION = "Contribution"
CLASS_COMPARISON = "Comparison"

# Reserved predicate labels (metadata and structural links).
P_TITLE = "hasTitle"
P_AUTHOR = "hasAuthor"
P_MONTH = "hasMonth"
P_YEAR = "hasYear"
P_DOI = "hasDOI"
P_CONTRIBUTION = "hasContribution"
P_SOURCE_REFERENCE = "hasSourceReference"
P_COMPARES = "comparesContribution"
P_REFERENCE_KEY = "hasReferenceKey"

RESERVED_PREDICATES = (
    P_TITLE, P_AUTHOR, P_MONTH, P_YEAR, P_DOI,
    P_CONTRIBUTION, P_SOURCE_REFERENCE, P_COMPARES, P_REFERENCE_KEY,
)
