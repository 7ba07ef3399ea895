"""Content-stream interpreter: text and stroked-path geometry.

Walks the operator stream of a page (and any Form XObjects it draws),
emitting one PositionedGlyph per shown character and one line segment per
stroked straight path edge.  Curves, fills, clipping and colour are parsed
but produce no output; images only flip the ``saw_image`` flag used for
raster-only detection.
"""

from __future__ import annotations

import math
import re
from typing import Optional

from .fonts import LoadedFont, load_font
from .model import PageBuild, PositionedGlyph
from .parser import Keyword, Lexer, Ref, StreamObject

Matrix = tuple[float, float, float, float, float, float]
IDENTITY: Matrix = (1.0, 0.0, 0.0, 1.0, 0.0, 0.0)


def mat_mul(m1: Matrix, m2: Matrix) -> Matrix:
    a1, b1, c1, d1, e1, f1 = m1
    a2, b2, c2, d2, e2, f2 = m2
    return (
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
        e1 * a2 + f1 * c2 + e2,
        e1 * b2 + f1 * d2 + f2,
    )


def mat_apply(m: Matrix, x: float, y: float) -> tuple[float, float]:
    a, b, c, d, e, f = m
    return (a * x + c * y + e, b * x + d * y + f)


def translation(tx: float, ty: float) -> Matrix:
    return (1.0, 0.0, 0.0, 1.0, tx, ty)


class _TextState:
    __slots__ = ("font", "size", "char_spacing", "word_spacing", "h_scale",
                 "leading", "rise", "tm", "tlm")

    def __init__(self) -> None:
        self.font: Optional[LoadedFont] = None
        self.size = 0.0
        self.char_spacing = 0.0
        self.word_spacing = 0.0
        self.h_scale = 1.0
        self.leading = 0.0
        self.rise = 0.0
        self.tm: Matrix = IDENTITY
        self.tlm: Matrix = IDENTITY


class ContentInterpreter:
    """One instance per page; reusable across nested form XObjects."""

    def __init__(self, pdf, build: PageBuild):
        self.pdf = pdf
        self.build = build
        self._font_cache: dict[int, LoadedFont] = {}

    def run(self, content: bytes, resources: dict, ctm: Matrix = IDENTITY, depth: int = 0) -> None:
        if depth > 12:
            return
        resources = self.pdf.resolve(resources) or {}
        lex = Lexer(content, 0)
        stack: list = []
        gs_stack: list[tuple[Matrix, float]] = []
        line_width = 1.0
        text = _TextState()
        path: list[tuple[float, float, float, float]] = []
        current: Optional[tuple[float, float]] = None
        subpath_start: Optional[tuple[float, float]] = None

        def seg(p0: tuple[float, float], p1: tuple[float, float]) -> None:
            x0, y0 = mat_apply(ctm, *p0)
            x1, y1 = mat_apply(ctm, *p1)
            path.append((x0, y0, x1, y1))

        def stroke() -> None:
            det = abs(ctm[0] * ctm[3] - ctm[1] * ctm[2])
            lw = line_width * math.sqrt(det) if det else line_width
            for x0, y0, x1, y1 in path:
                self.build.segments.append((x0, y0, x1, y1, lw))

        def show(raw: bytes) -> None:
            nonlocal text
            font = text.font
            if font is None:
                return
            for code, ch, w_em in font.decode(raw):
                trm = mat_mul(
                    (text.size * text.h_scale, 0.0, 0.0, text.size, 0.0, text.rise),
                    mat_mul(text.tm, ctm),
                )
                adv = w_em * text.size + text.char_spacing
                if font.is_space(code):
                    adv += text.word_spacing
                if ch and not ch.isspace():
                    corners = [
                        mat_apply(trm, 0.0, font.descent),
                        mat_apply(trm, w_em, font.descent),
                        mat_apply(trm, 0.0, font.ascent),
                        mat_apply(trm, w_em, font.ascent),
                    ]
                    xs = [p[0] for p in corners]
                    ys = [p[1] for p in corners]
                    size = math.hypot(trm[2], trm[3])
                    self.build.glyphs.append(PositionedGlyph(
                        text=ch,
                        x0=min(xs), y0=min(ys), x1=max(xs), y1=max(ys),
                        font_size=size,
                        baseline=mat_apply(trm, 0.0, 0.0)[1],
                    ))
                text.tm = mat_mul(translation(adv * text.h_scale, 0.0), text.tm)

        def next_line(tx: float, ty: float) -> None:
            text.tlm = mat_mul(translation(tx, ty), text.tlm)
            text.tm = text.tlm

        def lookup_font(name: str) -> Optional[LoadedFont]:
            fonts = self.pdf.resolve(resources.get("Font")) or {}
            ref = fonts.get(name)
            key = ref if isinstance(ref, Ref) else id(ref)
            if key not in self._font_cache:
                if ref is None:
                    self._font_cache[key] = LoadedFont()
                else:
                    self._font_cache[key] = load_font(ref, self.pdf.resolve, self.pdf.stream_bytes)
            return self._font_cache[key]

        def do_xobject(name: str) -> None:
            xobjects = self.pdf.resolve(resources.get("XObject")) or {}
            xobj = self.pdf.resolve(xobjects.get(name))
            if not isinstance(xobj, StreamObject):
                return
            subtype = str(self.pdf.resolve(xobj.dictionary.get("Subtype", "")))
            if subtype == "Image":
                self.build.saw_image = True
                return
            if subtype == "Form":
                matrix = self.pdf.resolve(xobj.dictionary.get("Matrix")) or IDENTITY
                inner_ctm = mat_mul(tuple(float(v) for v in matrix), ctm)
                inner_res = self.pdf.resolve(xobj.dictionary.get("Resources")) or resources
                try:
                    body = self.pdf.stream_bytes(xobj)
                except Exception:
                    return
                self.run(body, inner_res, inner_ctm, depth + 1)

        while True:
            lex.skip_ws()
            if lex.pos >= len(content):
                break
            try:
                token = lex.read_object()
            except Exception:
                break
            if not isinstance(token, Keyword):
                stack.append(token)
                continue
            op = str(token)
            try:
                if op == "q":
                    gs_stack.append((ctm, line_width))
                elif op == "Q":
                    if gs_stack:
                        ctm, line_width = gs_stack.pop()
                elif op == "cm" and len(stack) >= 6:
                    ctm = mat_mul(tuple(float(v) for v in stack[-6:]), ctm)
                elif op == "w" and stack:
                    line_width = float(stack[-1])
                elif op == "BT":
                    text.tm = text.tlm = IDENTITY
                elif op == "ET":
                    pass
                elif op == "Tf" and len(stack) >= 2:
                    text.font = lookup_font(str(stack[-2]))
                    text.size = float(stack[-1])
                elif op == "Tc" and stack:
                    text.char_spacing = float(stack[-1])
                elif op == "Tw" and stack:
                    text.word_spacing = float(stack[-1])
                elif op == "Tz" and stack:
                    text.h_scale = float(stack[-1]) / 100.0
                elif op == "TL" and stack:
                    text.leading = float(stack[-1])
                elif op == "Ts" and stack:
                    text.rise = float(stack[-1])
                elif op == "Td" and len(stack) >= 2:
                    next_line(float(stack[-2]), float(stack[-1]))
                elif op == "TD" and len(stack) >= 2:
                    text.leading = -float(stack[-1])
                    next_line(float(stack[-2]), float(stack[-1]))
                elif op == "Tm" and len(stack) >= 6:
                    text.tlm = tuple(float(v) for v in stack[-6:])
                    text.tm = text.tlm
                elif op == "T*":
                    next_line(0.0, -text.leading)
                elif op == "Tj" and stack:
                    if isinstance(stack[-1], bytes):
                        show(stack[-1])
                elif op == "'" and stack:
                    next_line(0.0, -text.leading)
                    if isinstance(stack[-1], bytes):
                        show(stack[-1])
                elif op == '"' and len(stack) >= 3:
                    text.word_spacing = float(stack[-3])
                    text.char_spacing = float(stack[-2])
                    next_line(0.0, -text.leading)
                    if isinstance(stack[-1], bytes):
                        show(stack[-1])
                elif op == "TJ" and stack and isinstance(stack[-1], list):
                    for item in stack[-1]:
                        if isinstance(item, bytes):
                            show(item)
                        elif isinstance(item, (int, float)):
                            shift = -float(item) / 1000.0 * text.size * text.h_scale
                            text.tm = mat_mul(translation(shift, 0.0), text.tm)
                elif op == "m" and len(stack) >= 2:
                    current = (float(stack[-2]), float(stack[-1]))
                    subpath_start = current
                elif op == "l" and len(stack) >= 2:
                    pt = (float(stack[-2]), float(stack[-1]))
                    if current is not None:
                        seg(current, pt)
                    current = pt
                elif op == "re" and len(stack) >= 4:
                    x, y, w, h = (float(v) for v in stack[-4:])
                    corners = [(x, y), (x + w, y), (x + w, y + h), (x, y + h)]
                    for i in range(4):
                        seg(corners[i], corners[(i + 1) % 4])
                    current = (x, y)
                    subpath_start = current
                elif op in ("c", "v", "y"):
                    # curves never become rulings; just track the endpoint
                    if len(stack) >= 2:
                        current = (float(stack[-2]), float(stack[-1]))
                elif op == "h":
                    if current is not None and subpath_start is not None and current != subpath_start:
                        seg(current, subpath_start)
                    current = subpath_start
                elif op in ("S", "s", "B", "B*", "b", "b*"):
                    if op in ("s", "b", "b*") and current is not None and subpath_start is not None \
                            and current != subpath_start:
                        seg(current, subpath_start)
                    stroke()
                    path.clear()
                    current = subpath_start = None
                elif op in ("f", "F", "f*", "n"):
                    path.clear()
                    current = subpath_start = None
                elif op == "Do" and stack:
                    do_xobject(str(stack[-1]))
                elif op == "BI":
                    # inline image: skip binary data up to a whitespace-EI
                    m = re.search(rb"\sEI(?=[\s\[\]<>/%(]|$)", content[lex.pos:])
                    lex.pos = len(content) if m is None else lex.pos + m.end()
                    self.build.saw_image = True
            finally:
                stack.clear()
