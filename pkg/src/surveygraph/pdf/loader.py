"""Document loading and region queries over the extracted layout.

Thresholds (all in PDF points):

* segments are classified horizontal/vertical when the off-axis delta is
  below 0.5; anything slanted is discarded,
* nearly-collinear rulings within 1.0 of each other merge into one,
* rulings shorter than 4.0 after clipping are dropped (filters out
  single-character underlines),
* reading-order ties on the baseline are broken within 1.0 by ascending x.
"""

from __future__ import annotations

import io
from typing import Iterable

from ..errors import FileUnreadable, NoTextLayer, PageOutOfRange
from .content import ContentInterpreter, translation
from .model import Document, Orientation, Page, PageBuild, PositionedGlyph, Region, Ruling
from .parser import PdfFile, StreamObject

AXIS_TOLERANCE = 0.5
MERGE_TOLERANCE = 1.0
MIN_RULING_LENGTH = 4.0
BASELINE_TIE = 1.0


def load_document(path: str) -> Document:
    """Parse a PDF file into an immutable layout Document.

    Raises FileUnreadable, NotAPdf, EncryptedPdf, or NoTextLayer (when the
    file only paints images and carries no extractable text at all).
    """
    try:
        with io.open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise FileUnreadable(str(exc)) from exc

    pdf = PdfFile(data)
    pages: list[Page] = []
    any_image = False
    total_glyphs = 0

    for index, page_dict in enumerate(pdf.pages()):
        media = [float(v) for v in (pdf.resolve(page_dict.get("MediaBox")) or [0, 0, 612, 792])]
        x0, y0 = min(media[0], media[2]), min(media[1], media[3])
        width, height = abs(media[2] - media[0]), abs(media[3] - media[1])

        build = PageBuild()
        contents = pdf.resolve(page_dict.get("Contents"))
        chunks: list[bytes] = []
        if isinstance(contents, list):
            for part in contents:
                part = pdf.resolve(part)
                if isinstance(part, StreamObject):
                    chunks.append(pdf.stream_bytes(part))
        elif isinstance(contents, StreamObject):
            chunks.append(pdf.stream_bytes(contents))
        if chunks:
            resources = pdf.resolve(page_dict.get("Resources")) or {}
            interp = ContentInterpreter(pdf, build)
            # shift so page space always starts at (0, 0)
            interp.run(b"\n".join(chunks), resources, translation(-x0, -y0))

        glyphs = tuple(_reading_order(_clamp_glyphs(build.glyphs, width, height)))
        rulings = tuple(_merge_rulings(_classify_segments(build.segments)))
        total_glyphs += len(glyphs)
        any_image = any_image or build.saw_image
        pages.append(Page(index=index, width=width, height=height,
                          glyphs=glyphs, rulings=rulings))

    if total_glyphs == 0 and any_image:
        raise NoTextLayer(f"{path}: images but no extractable text")
    return Document(pages=tuple(pages), source_path=str(path))


def _clamp_glyphs(glyphs: Iterable[PositionedGlyph], width: float, height: float) -> list[PositionedGlyph]:
    out = []
    for g in glyphs:
        x0, y0 = max(0.0, min(g.x0, width)), max(0.0, min(g.y0, height))
        x1, y1 = max(0.0, min(g.x1, width)), max(0.0, min(g.y1, height))
        if (x0, y0, x1, y1) != (g.x0, g.y0, g.x1, g.y1):
            g = PositionedGlyph(text=g.text, x0=x0, y0=y0, x1=x1, y1=y1,
                                font_size=g.font_size,
                                baseline=max(0.0, min(g.baseline, height)))
        out.append(g)
    return out


def _reading_order(glyphs: list[PositionedGlyph]) -> list[PositionedGlyph]:
    """Top-to-bottom, then left-to-right within a baseline band."""
    ordered = sorted(glyphs, key=lambda g: -g.baseline)
    out: list[PositionedGlyph] = []
    band: list[PositionedGlyph] = []
    band_base = None
    for g in ordered:
        if band_base is None or band_base - g.baseline <= BASELINE_TIE:
            band.append(g)
            band_base = g.baseline if band_base is None else band_base
        else:
            out.extend(sorted(band, key=lambda b: (b.x0, b.x1)))
            band = [g]
            band_base = g.baseline
    out.extend(sorted(band, key=lambda b: (b.x0, b.x1)))
    return out


def _classify_segments(segments: Iterable[tuple[float, float, float, float, float]]) -> list[Ruling]:
    rulings = []
    for x0, y0, x1, y1, lw in segments:
        dx, dy = abs(x1 - x0), abs(y1 - y0)
        if dy < AXIS_TOLERANCE and dx >= dy:
            lo, hi = sorted((x0, x1))
            if hi > lo:
                rulings.append(Ruling(Orientation.HORIZONTAL, (y0 + y1) / 2.0, lo, hi, lw))
        elif dx < AXIS_TOLERANCE and dy > dx:
            lo, hi = sorted((y0, y1))
            if hi > lo:
                rulings.append(Ruling(Orientation.VERTICAL, (x0 + x1) / 2.0, lo, hi, lw))
    return rulings


def _merge_rulings(rulings: list[Ruling]) -> list[Ruling]:
    """Collapse overlapping strokes drawn for the same border line."""
    out: list[Ruling] = []
    for orientation in (Orientation.HORIZONTAL, Orientation.VERTICAL):
        group = sorted((r for r in rulings if r.orientation is orientation),
                       key=lambda r: (r.position, r.start))
        clusters: list[list[Ruling]] = []
        for r in group:
            if clusters and r.position - clusters[-1][-1].position <= MERGE_TOLERANCE:
                clusters[-1].append(r)
            else:
                clusters.append([r])
        for cluster in clusters:
            position = sum(r.position for r in cluster) / len(cluster)
            spans: list[list[float]] = []
            for r in sorted(cluster, key=lambda r: r.start):
                if spans and r.start <= spans[-1][1] + MERGE_TOLERANCE:
                    spans[-1][1] = max(spans[-1][1], r.end)
                    spans[-1][2] = max(spans[-1][2], r.thickness)
                else:
                    spans.append([r.start, r.end, r.thickness])
            for start, end, thickness in spans:
                out.append(Ruling(orientation, position, start, end, thickness))
    out.sort(key=lambda r: (r.orientation.value, -r.position if r.orientation is Orientation.HORIZONTAL else r.position, r.start))
    return out


def _page_for(doc: Document, region: Region) -> Page:
    if not 0 <= region.page_index < doc.page_count:
        raise PageOutOfRange(f"page {region.page_index} of {doc.page_count}")
    return doc.pages[region.page_index]


def glyphs_in_region(doc: Document, region: Region) -> list[PositionedGlyph]:
    """Glyphs whose bounding-box center lies inside the region, reading order."""
    return page_glyphs_in_region(_page_for(doc, region), region)


def rulings_in_region(doc: Document, region: Region) -> list[Ruling]:
    """Rulings clipped to the region; clipped spans shorter than the minimum are dropped."""
    return page_rulings_in_region(_page_for(doc, region), region)


def page_glyphs_in_region(page: Page, region: Region) -> list[PositionedGlyph]:
    return [g for g in page.glyphs if region.contains_point(*g.center)]


def page_rulings_in_region(page: Page, region: Region) -> list[Ruling]:
    out = []
    for r in page.rulings:
        if r.orientation is Orientation.HORIZONTAL:
            if not region.y0 <= r.position <= region.y1:
                continue
            start, end = max(r.start, region.x0), min(r.end, region.x1)
        else:
            if not region.x0 <= r.position <= region.x1:
                continue
            start, end = max(r.start, region.y0), min(r.end, region.y1)
        if end - start >= MIN_RULING_LENGTH:
            out.append(Ruling(r.orientation, r.position, start, end, r.thickness))
    return out


def dump_layout(doc: Document) -> str:
    """Line-oriented debug dump used for fixture authoring."""
    lines = []
    for page in doc.pages:
        for g in page.glyphs:
            lines.append(f"GLYPH {page.index} {g.x0:.2f} {g.y0:.2f} {g.x1:.2f} {g.y1:.2f} {g.text}")
        for r in page.rulings:
            lines.append(f"RULE {page.index} {r.orientation.value} {r.position:.2f} {r.start:.2f} {r.end:.2f}")
    return "\n".join(lines) + ("\n" if lines else "")
