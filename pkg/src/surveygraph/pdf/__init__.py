"""PDF layout substrate: positioned glyphs and ruling lines per page."""

from .loader import dump_layout, glyphs_in_region, load_document, rulings_in_region
from .model import Document, Orientation, Page, PositionedGlyph, Region, Ruling

__all__ = [
    "Document",
    "Orientation",
    "Page",
    "PositionedGlyph",
    "Region",
    "Ruling",
    "dump_layout",
    "glyphs_in_region",
    "load_document",
    "rulings_in_region",
]
