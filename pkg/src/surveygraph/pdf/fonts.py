"""Font handling for the content interpreter.

Maps string bytes to (unicode text, advance width) pairs using, in order of
preference: the font's /ToUnicode CMap, its /Encoding (with /Differences),
or the built-in tables for the 14 standard fonts.  Codes that cannot be
mapped to real text decode into the Private Use Area (U+E000 + code) so that
downstream diagnostics can tell "undecodable symbol glyph" apart from
ordinary text; U+FFFD is reserved for genuinely corrupt mappings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Optional

from ._std14 import ASCENT_DESCENT, ENCODINGS, GLYPH_TO_UNICODE, GLYPH_WIDTHS

_DEFAULT_ASCENT = 0.8
_DEFAULT_DESCENT = -0.2
_SUBSET_PREFIX = re.compile(r"^[A-Z]{6}\+")

# Names the built-in text fonts use for their default encodings.
_BUILTIN_ENCODING = {
    "Symbol": "SymbolEncoding",
    "ZapfDingbats": "ZapfDingbatsEncoding",
}


def _glyphname_to_unicode(name: str) -> Optional[str]:
    if name in GLYPH_TO_UNICODE:
        return GLYPH_TO_UNICODE[name]
    m = re.fullmatch(r"uni([0-9A-Fa-f]{4})", name)
    if m:
        return chr(int(m.group(1), 16))
    m = re.fullmatch(r"u([0-9A-Fa-f]{4,6})", name)
    if m:
        return chr(int(m.group(1), 16))
    return None


def _parse_tounicode(data: bytes) -> dict[int, str]:
    """Extract code -> text pairs from a ToUnicode CMap stream."""

    def hex_text(h: bytes) -> str:
        raw = bytes.fromhex(h.decode("ascii"))
        if len(raw) % 2:
            raw += b"\x00"
        return raw.decode("utf-16-be", errors="replace")

    mapping: dict[int, str] = {}
    for block in re.findall(rb"beginbfchar(.*?)endbfchar", data, re.S):
        for src, dst in re.findall(rb"<([0-9A-Fa-f]+)>\s*<([0-9A-Fa-f]+)>", block):
            mapping[int(src, 16)] = hex_text(dst)
    for block in re.findall(rb"beginbfrange(.*?)endbfrange", data, re.S):
        token = rb"<([0-9A-Fa-f]+)>\s*<([0-9A-Fa-f]+)>\s*(\[(?:\s*<[0-9A-Fa-f]+>)+\s*\]|<[0-9A-Fa-f]+>)"
        for lo, hi, dst in re.findall(token, block):
            lo_i, hi_i = int(lo, 16), int(hi, 16)
            if dst.startswith(b"["):
                items = re.findall(rb"<([0-9A-Fa-f]+)>", dst)
                for offset, item in enumerate(items):
                    if lo_i + offset <= hi_i:
                        mapping[lo_i + offset] = hex_text(item)
            else:
                base = int(dst[1:-1], 16)
                for code in range(lo_i, min(hi_i, lo_i + 0xFFFF) + 1):
                    mapping[code] = chr(base + (code - lo_i))
    return mapping


def _parse_cid_widths(w_array: list) -> dict[int, float]:
    widths: dict[int, float] = {}
    i = 0
    while i < len(w_array):
        first = int(w_array[i])
        nxt = w_array[i + 1] if i + 1 < len(w_array) else None
        if isinstance(nxt, list):
            for offset, w in enumerate(nxt):
                widths[first + offset] = float(w)
            i += 2
        elif nxt is not None and i + 2 < len(w_array):
            last, w = int(nxt), float(w_array[i + 2])
            for cid in range(first, last + 1):
                widths[cid] = w
            i += 3
        else:
            break
    return widths


@dataclass
class LoadedFont:
    """Everything the interpreter needs to advance through a shown string."""

    base_name: str = "unknown"
    two_byte: bool = False
    ascent: float = _DEFAULT_ASCENT
    descent: float = _DEFAULT_DESCENT
    to_unicode: dict[int, str] = field(default_factory=dict)
    code_to_glyph: dict[int, Optional[str]] = field(default_factory=dict)
    widths: dict[int, float] = field(default_factory=dict)       # code -> 1/1000 em
    std_widths: Optional[dict] = None                            # glyphname -> width
    default_width: float = 500.0

    def decode(self, raw: bytes) -> Iterator[tuple[int, str, float]]:
        """Yield (code, text, width_in_em) for each glyph in the string."""
        if self.two_byte:
            codes = [int.from_bytes(raw[i:i + 2], "big") for i in range(0, len(raw) - 1, 2)]
        else:
            codes = list(raw)
        for code in codes:
            yield code, self._text_for(code), self._width_for(code) / 1000.0

    def _text_for(self, code: int) -> str:
        if code in self.to_unicode:
            return self.to_unicode[code]
        glyph = self.code_to_glyph.get(code)
        if glyph:
            text = _glyphname_to_unicode(glyph)
            if text is not None:
                return text
        return chr(0xE000 + (code & 0xFFF))

    def _width_for(self, code: int) -> float:
        if code in self.widths:
            return self.widths[code]
        if self.std_widths is not None:
            glyph = self.code_to_glyph.get(code)
            if glyph and glyph in self.std_widths:
                return float(self.std_widths[glyph])
        return self.default_width

    def is_space(self, code: int) -> bool:
        return not self.two_byte and code == 0x20


def load_font(font_dict: dict, resolve, stream_bytes) -> LoadedFont:
    """Build a LoadedFont from a /Font resource dictionary."""
    font_dict = resolve(font_dict) or {}
    subtype = str(resolve(font_dict.get("Subtype", "")))
    base = str(resolve(font_dict.get("BaseFont", ""))) or "unknown"
    base = _SUBSET_PREFIX.sub("", base)
    font = LoadedFont(base_name=base)

    tu = resolve(font_dict.get("ToUnicode"))
    if tu is not None:
        try:
            font.to_unicode = _parse_tounicode(stream_bytes(tu))
        except Exception:
            font.to_unicode = {}

    if subtype == "Type0":
        font.two_byte = True
        descendants = resolve(font_dict.get("DescendantFonts")) or []
        desc_font = resolve(descendants[0]) if descendants else {}
        if isinstance(desc_font, dict):
            w = resolve(desc_font.get("W"))
            if isinstance(w, list):
                font.widths = _parse_cid_widths([resolve(x) for x in w])
            dw = resolve(desc_font.get("DW"))
            font.default_width = float(dw) if dw is not None else 1000.0
            _apply_descriptor(font, resolve(desc_font.get("FontDescriptor")), resolve)
        return font

    # simple font
    first_char = resolve(font_dict.get("FirstChar"))
    widths = resolve(font_dict.get("Widths"))
    if isinstance(widths, list) and first_char is not None:
        for i, w in enumerate(widths):
            w = resolve(w)
            if w is not None:
                font.widths[int(first_char) + i] = float(w)

    # encoding: built-in default, optional base encoding, optional differences
    default_enc = _BUILTIN_ENCODING.get(base, "StandardEncoding")
    enc_obj = resolve(font_dict.get("Encoding"))
    differences: list = []
    enc_name = default_enc
    if enc_obj is not None and not isinstance(enc_obj, dict):
        enc_name = str(enc_obj)
    elif isinstance(enc_obj, dict):
        if "BaseEncoding" in enc_obj:
            enc_name = str(resolve(enc_obj["BaseEncoding"]))
        differences = resolve(enc_obj.get("Differences")) or []
    table = ENCODINGS.get(enc_name, ENCODINGS[default_enc])
    font.code_to_glyph = {i: g for i, g in enumerate(table)}
    code = 0
    for item in differences:
        item = resolve(item)
        if isinstance(item, (int, float)):
            code = int(item)
        else:
            font.code_to_glyph[code] = str(item)
            code += 1

    if base in GLYPH_WIDTHS:
        font.std_widths = GLYPH_WIDTHS[base]
        asc, desc = ASCENT_DESCENT.get(base, (0, 0))
        if asc or desc:
            font.ascent, font.descent = asc / 1000.0, desc / 1000.0

    mw = resolve(font_dict.get("MissingWidth"))
    if mw is not None:
        font.default_width = float(mw)

    # Type3 widths live in glyph space; scale them through the font matrix.
    if subtype == "Type3":
        matrix = resolve(font_dict.get("FontMatrix")) or [0.001, 0, 0, 0.001, 0, 0]
        scale = float(matrix[0]) * 1000.0
        font.widths = {c: w * scale for c, w in font.widths.items()}

    _apply_descriptor(font, resolve(font_dict.get("FontDescriptor")), resolve)
    return font


def _apply_descriptor(font: LoadedFont, descriptor, resolve) -> None:
    if not isinstance(descriptor, dict):
        return
    asc = resolve(descriptor.get("Ascent"))
    desc = resolve(descriptor.get("Descent"))
    if asc:
        font.ascent = float(asc) / 1000.0
    if desc:
        font.descent = float(desc) / 1000.0
    mw = resolve(descriptor.get("MissingWidth"))
    if mw is not None:
        font.default_width = float(mw)
