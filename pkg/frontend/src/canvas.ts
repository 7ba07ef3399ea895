// Region-selection overlay. Pages render as an SVG built from the glyph and
// ruling geometry the server ships, so the drawn coordinates agree exactly
// with the Region contract (PDF points, origin bottom-left) and no PDF
// rasterizer is needed.

import type { PageJson, RegionJson } from "./api";

export interface Viewport {
  pageWidth: number;
  pageHeight: number;
  scale: number;
}

export function viewportFor(page: PageJson, maxWidthPx: number): Viewport {
  const scale = maxWidthPx > 0 ? maxWidthPx / page.width : 1;
  return { pageWidth: page.width, pageHeight: page.height, scale };
}

/** Screen pixel (y down) to PDF point (y up). */
export function toPdf(vp: Viewport, px: number, py: number): { x: number; y: number } {
  return { x: px / vp.scale, y: vp.pageHeight - py / vp.scale };
}

/** PDF point to screen pixel. */
export function toScreen(vp: Viewport, x: number, y: number): { px: number; py: number } {
  return { px: x * vp.scale, py: (vp.pageHeight - y) * vp.scale };
}

const MIN_DRAG_PX = 3;

/** Drag in screen pixels to a Region; degenerate drags yield null. */
export function regionFromDrag(
  vp: Viewport,
  page: number,
  start: { px: number; py: number },
  end: { px: number; py: number },
): RegionJson | null {
  if (Math.abs(end.px - start.px) < MIN_DRAG_PX || Math.abs(end.py - start.py) < MIN_DRAG_PX) {
    return null;
  }
  const a = toPdf(vp, start.px, start.py);
  const b = toPdf(vp, end.px, end.py);
  return {
    page,
    x0: Math.min(a.x, b.x),
    y0: Math.min(a.y, b.y),
    x1: Math.max(a.x, b.x),
    y1: Math.max(a.y, b.y),
  };
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderPageSvg(doc: Document, page: PageJson, vp: Viewport): SVGSVGElement {
  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "page-canvas");
  svg.setAttribute("width", String(page.width * vp.scale));
  svg.setAttribute("height", String(page.height * vp.scale));
  svg.setAttribute("viewBox", `0 0 ${page.width * vp.scale} ${page.height * vp.scale}`);

  for (const glyph of page.glyphs) {
    const { px, py } = toScreen(vp, glyph.x0, glyph.y1);
    const rect = doc.createElementNS(SVG_NS, "rect");
    rect.setAttribute("class", "glyph-box");
    rect.setAttribute("x", px.toFixed(2));
    rect.setAttribute("y", py.toFixed(2));
    rect.setAttribute("width", ((glyph.x1 - glyph.x0) * vp.scale).toFixed(2));
    rect.setAttribute("height", ((glyph.y1 - glyph.y0) * vp.scale).toFixed(2));
    svg.appendChild(rect);
  }
  for (const ruling of page.rulings) {
    const line = doc.createElementNS(SVG_NS, "line");
    line.setAttribute("class", "ruling-line");
    if (ruling.orientation === "H") {
      const a = toScreen(vp, ruling.start, ruling.position);
      const b = toScreen(vp, ruling.end, ruling.position);
      line.setAttribute("x1", a.px.toFixed(2));
      line.setAttribute("y1", a.py.toFixed(2));
      line.setAttribute("x2", b.px.toFixed(2));
      line.setAttribute("y2", b.py.toFixed(2));
    } else {
      const a = toScreen(vp, ruling.position, ruling.start);
      const b = toScreen(vp, ruling.position, ruling.end);
      line.setAttribute("x1", a.px.toFixed(2));
      line.setAttribute("y1", a.py.toFixed(2));
      line.setAttribute("x2", b.px.toFixed(2));
      line.setAttribute("y2", b.py.toFixed(2));
    }
    svg.appendChild(line);
  }
  return svg;
}

export interface SelectionCallbacks {
  onRegion: (region: RegionJson) => void;
}

/** Wire drag-to-select onto a rendered page SVG. */
export function attachSelection(
  svg: SVGSVGElement,
  vp: Viewport,
  page: number,
  callbacks: SelectionCallbacks,
): void {
  let start: { px: number; py: number } | null = null;
  let marquee: SVGRectElement | null = null;

  const local = (event: MouseEvent) => {
    const box = svg.getBoundingClientRect();
    return { px: event.clientX - box.left, py: event.clientY - box.top };
  };

  svg.addEventListener("mousedown", (event) => {
    start = local(event);
    marquee = svg.ownerDocument.createElementNS(SVG_NS, "rect");
    marquee.setAttribute("class", "selection-marquee");
    svg.appendChild(marquee);
  });
  svg.addEventListener("mousemove", (event) => {
    if (!start || !marquee) return;
    const now = local(event);
    marquee.setAttribute("x", String(Math.min(start.px, now.px)));
    marquee.setAttribute("y", String(Math.min(start.py, now.py)));
    marquee.setAttribute("width", String(Math.abs(now.px - start.px)));
    marquee.setAttribute("height", String(Math.abs(now.py - start.py)));
  });
  svg.addEventListener("mouseup", (event) => {
    if (!start) return;
    const region = regionFromDrag(vp, page, start, local(event));
    start = null;
    marquee?.remove();
    marquee = null;
    if (region) callbacks.onRegion(region);
  });
}
