"""Reference extraction: keys, bibliography parsing, linking, metadata."""

from .citation import parse_citation_string
from .columns import append_metadata_columns
from .keys import generate_key, parse_citation_key
from .linking import link_key, link_table_rows
from .metadata import (CrossrefClient, MetadataClient, MockMetadataClient,
                       lookup_metadata, trigram_similarity)
from .model import BibEntry, CitationKey, KeyVariant, LinkResult
from .reflist import parse_reference_list

__all__ = [
    "BibEntry",
    "CitationKey",
    "CrossrefClient",
    "KeyVariant",
    "LinkResult",
    "MetadataClient",
    "MockMetadataClient",
    "append_metadata_columns",
    "generate_key",
    "link_key",
    "link_table_rows",
    "lookup_metadata",
    "parse_citation_key",
    "parse_citation_string",
    "parse_reference_list",
    "trigram_similarity",
]
