"""Minimal PDF object parser: xref tables, indirect objects, stream filters.

Covers the subset of PDF 1.4-1.7 needed to read text and vector content from
born-digital articles: classic xref tables and xref streams, object streams,
Flate/ASCII85/ASCIIHex filters with PNG predictors, and the page tree with
attribute inheritance.  Interactive features, encryption and incremental
update niceties beyond /Prev chains are out of scope; encrypted files are
detected and refused.
"""

from __future__ import annotations

import base64
import re
import zlib
from dataclasses import dataclass
from typing import Any, Optional

from ..errors import EncryptedPdf, NotAPdf

WHITESPACE = b"\x00\t\n\x0c\r "
DELIMITERS = b"()<>[]{}/%"


@dataclass(frozen=True)
class Ref:
    """Indirect object reference `num gen R`."""

    num: int
    gen: int


@dataclass
class StreamObject:
    """Stream dictionary plus its raw (still encoded) bytes."""

    dictionary: dict
    raw: bytes


class Name(str):
    """A PDF name token; subclass so /Name and (Name) stay distinguishable."""

    __slots__ = ()


class Keyword(str):
    """A bare keyword token (content-stream operator, obj/endobj, ...)."""

    __slots__ = ()


def _is_regular(byte: int) -> bool:
    return byte not in WHITESPACE and byte not in DELIMITERS


class Lexer:
    """Byte-level tokenizer over a PDF buffer."""

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def skip_ws(self) -> None:
        data, n = self.data, len(self.data)
        while self.pos < n:
            b = data[self.pos]
            if b in WHITESPACE:
                self.pos += 1
            elif b == 0x25:  # '%' comment runs to end of line
                eol = data.find(b"\n", self.pos)
                self.pos = n if eol < 0 else eol + 1
            else:
                return

    def peek_byte(self) -> int:
        return self.data[self.pos] if self.pos < len(self.data) else -1

    def read_regular_run(self) -> bytes:
        start = self.pos
        while self.pos < len(self.data) and _is_regular(self.data[self.pos]):
            self.pos += 1
        return self.data[start:self.pos]

    def read_object(self) -> Any:
        self.skip_ws()
        b = self.peek_byte()
        if b < 0:
            raise NotAPdf("unexpected end of file")
        ch = self.data[self.pos:self.pos + 1]
        if ch == b"/":
            return self._read_name()
        if ch == b"(":
            return self._read_literal_string()
        if ch == b"<":
            if self.data[self.pos:self.pos + 2] == b"<<":
                return self._read_dict_or_stream()
            return self._read_hex_string()
        if ch == b"[":
            return self._read_array()
        if ch == b"]":
            raise NotAPdf("unbalanced ]")
        run = self.read_regular_run()
        if not run:
            raise NotAPdf(f"unparseable byte {ch!r} at {self.pos}")
        return self._interpret_keyword_or_number(run)

    def _interpret_keyword_or_number(self, run: bytes) -> Any:
        if run == b"true":
            return True
        if run == b"false":
            return False
        if run == b"null":
            return None
        if re.fullmatch(rb"[+-]?\d+", run):
            value = int(run)
            # Look ahead for `gen R` to form a reference.
            save = self.pos
            self.skip_ws()
            run2 = self.read_regular_run()
            if re.fullmatch(rb"\d+", run2):
                self.skip_ws()
                run3 = self.read_regular_run()
                if run3 == b"R":
                    return Ref(value, int(run2))
            self.pos = save
            return value
        if re.fullmatch(rb"[+-]?(\d*\.\d*|\d+)", run):
            return float(run)
        return Keyword(run.decode("latin-1"))

    def _read_name(self) -> Name:
        self.pos += 1  # '/'
        raw = self.read_regular_run()
        # #XX hex escapes inside names
        def unescape(m: re.Match) -> bytes:
            return bytes([int(m.group(1), 16)])
        raw = re.sub(rb"#([0-9A-Fa-f]{2})", unescape, raw)
        return Name(raw.decode("latin-1"))

    def _read_literal_string(self) -> bytes:
        data = self.data
        self.pos += 1  # '('
        out = bytearray()
        depth = 1
        while self.pos < len(data):
            b = data[self.pos]
            if b == 0x5C:  # backslash
                self.pos += 1
                if self.pos >= len(data):
                    break
                e = data[self.pos]
                mapped = {0x6E: 0x0A, 0x72: 0x0D, 0x74: 0x09, 0x62: 0x08,
                          0x66: 0x0C, 0x28: 0x28, 0x29: 0x29, 0x5C: 0x5C}
                if e in mapped:
                    out.append(mapped[e])
                    self.pos += 1
                elif 0x30 <= e <= 0x37:  # octal, up to 3 digits
                    oct_digits = bytearray()
                    while len(oct_digits) < 3 and self.pos < len(data) and 0x30 <= data[self.pos] <= 0x37:
                        oct_digits.append(data[self.pos])
                        self.pos += 1
                    out.append(int(oct_digits, 8) & 0xFF)
                elif e in (0x0A, 0x0D):  # line continuation
                    self.pos += 1
                    if e == 0x0D and self.pos < len(data) and data[self.pos] == 0x0A:
                        self.pos += 1
                else:
                    out.append(e)
                    self.pos += 1
                continue
            if b == 0x28:
                depth += 1
            elif b == 0x29:
                depth -= 1
                if depth == 0:
                    self.pos += 1
                    return bytes(out)
            out.append(b)
            self.pos += 1
        raise NotAPdf("unterminated string")

    def _read_hex_string(self) -> bytes:
        self.pos += 1  # '<'
        end = self.data.find(b">", self.pos)
        if end < 0:
            raise NotAPdf("unterminated hex string")
        hexdigits = re.sub(rb"[^0-9A-Fa-f]", b"", self.data[self.pos:end])
        self.pos = end + 1
        if len(hexdigits) % 2:
            hexdigits += b"0"
        return bytes.fromhex(hexdigits.decode("ascii"))

    def _read_array(self) -> list:
        self.pos += 1  # '['
        items = []
        while True:
            self.skip_ws()
            if self.peek_byte() == 0x5D:  # ']'
                self.pos += 1
                return items
            items.append(self.read_object())

    def _read_dict_or_stream(self) -> Any:
        self.pos += 2  # '<<'
        d: dict = {}
        while True:
            self.skip_ws()
            if self.data[self.pos:self.pos + 2] == b">>":
                self.pos += 2
                break
            key = self.read_object()
            if not isinstance(key, Name):
                raise NotAPdf("dictionary key is not a name")
            d[str(key)] = self.read_object()
        save = self.pos
        self.skip_ws()
        if self.data[self.pos:self.pos + 6] == b"stream":
            self.pos += 6
            if self.data[self.pos:self.pos + 2] == b"\r\n":
                self.pos += 2
            elif self.data[self.pos:self.pos + 1] in (b"\n", b"\r"):
                self.pos += 1
            length = d.get("Length")
            if isinstance(length, int):
                raw = self.data[self.pos:self.pos + length]
                self.pos += length
                # tolerate slightly-wrong /Length by resyncing on endstream
                self.skip_ws()
                if self.data[self.pos:self.pos + 9] != b"endstream":
                    end = self.data.find(b"endstream", save)
                    raw = self.data[save:end]
                    m = re.match(rb"\s*stream(\r\n|\n|\r)", raw)
                    raw = raw[m.end():] if m else raw
                    self.pos = end
            else:
                end = self.data.find(b"endstream", self.pos)
                raw = self.data[self.pos:end]
                self.pos = end
            self.skip_ws()
            if self.data[self.pos:self.pos + 9] == b"endstream":
                self.pos += 9
            return StreamObject(d, bytes(raw))
        self.pos = save
        return d


# --- filters ----------------------------------------------------------------

def _png_unpredict(data: bytes, columns: int, colors: int, bpc: int) -> bytes:
    stride = max(1, (columns * colors * bpc + 7) // 8)
    out = bytearray()
    prev = bytearray(stride)
    pos = 0
    bpp = max(1, (colors * bpc + 7) // 8)
    while pos < len(data):
        ftype = data[pos]
        row = bytearray(data[pos + 1:pos + 1 + stride])
        pos += 1 + stride
        if ftype == 1:  # Sub
            for i in range(bpp, len(row)):
                row[i] = (row[i] + row[i - bpp]) & 0xFF
        elif ftype == 2:  # Up
            for i in range(len(row)):
                row[i] = (row[i] + prev[i]) & 0xFF
        elif ftype == 3:  # Average
            for i in range(len(row)):
                left = row[i - bpp] if i >= bpp else 0
                row[i] = (row[i] + ((left + prev[i]) >> 1)) & 0xFF
        elif ftype == 4:  # Paeth
            for i in range(len(row)):
                a = row[i - bpp] if i >= bpp else 0
                b = prev[i]
                c = prev[i - bpp] if i >= bpp else 0
                p = a + b - c
                pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
                pred = a if (pa <= pb and pa <= pc) else (b if pb <= pc else c)
                row[i] = (row[i] + pred) & 0xFF
        out.extend(row)
        prev = row
    return bytes(out)


def decode_stream(stream: StreamObject, resolve) -> bytes:
    """Apply the stream's filter chain and return the decoded bytes."""
    d = stream.dictionary
    filters = resolve(d.get("Filter"))
    if filters is None:
        filters = []
    elif isinstance(filters, Name):
        filters = [filters]
    params = resolve(d.get("DecodeParms")) or resolve(d.get("DP"))
    if params is None:
        params = [None] * len(filters)
    elif isinstance(params, dict):
        params = [params]
    params += [None] * (len(filters) - len(params))

    data = stream.raw
    for filt, parm in zip(filters, params):
        fname = str(filt)
        if fname in ("FlateDecode", "Fl"):
            data = zlib.decompress(data)
        elif fname in ("ASCII85Decode", "A85"):
            text = data.strip()
            if text.startswith(b"<~"):
                text = text[2:]
            if text.endswith(b"~>"):
                text = text[:-2]
            data = base64.a85decode(re.sub(rb"\s", b"", text))
        elif fname in ("ASCIIHexDecode", "AHx"):
            text = re.sub(rb"[^0-9A-Fa-f>]", b"", data)
            text = text.split(b">")[0]
            if len(text) % 2:
                text += b"0"
            data = bytes.fromhex(text.decode("ascii"))
        else:
            raise NotAPdf(f"unsupported stream filter {fname}")
        parm = resolve(parm) or {}
        predictor = resolve(parm.get("Predictor", 1)) or 1
        if predictor >= 10:
            data = _png_unpredict(
                data,
                resolve(parm.get("Columns", 1)) or 1,
                resolve(parm.get("Colors", 1)) or 1,
                resolve(parm.get("BitsPerComponent", 8)) or 8,
            )
        elif predictor != 1:
            raise NotAPdf(f"unsupported predictor {predictor}")
    return data


# --- document file ----------------------------------------------------------

class PdfFile:
    """Random access to the indirect objects of one PDF file."""

    def __init__(self, data: bytes):
        if not data.lstrip()[:5].startswith(b"%PDF-"):
            raise NotAPdf("missing %PDF header")
        self.data = data
        self.xref: dict[int, tuple] = {}   # num -> ("raw", offset) | ("objstm", stream_num, idx)
        self.trailer: dict = {}
        self._cache: dict[int, Any] = {}
        self._objstm_cache: dict[int, list] = {}
        self._load_xref()
        if "Encrypt" in self.trailer:
            raise EncryptedPdf("document has an /Encrypt dictionary")

    # -- xref loading --

    def _load_xref(self) -> None:
        try:
            start = self._find_startxref()
            seen: set[int] = set()
            while start is not None and start not in seen:
                seen.add(start)
                start = self._load_xref_section(start)
        except NotAPdf:
            self.xref = {}
        if not self.xref:
            self._scan_objects()
            if not self.xref:
                raise NotAPdf("no indirect objects found")
            if not self.trailer:
                self._recover_trailer()

    def _find_startxref(self) -> int:
        tail = self.data[-2048:]
        m = None
        for m in re.finditer(rb"startxref\s+(\d+)", tail):
            pass
        if m is None:
            raise NotAPdf("startxref not found")
        return int(m.group(1))

    def _load_xref_section(self, offset: int) -> Optional[int]:
        lex = Lexer(self.data, offset)
        lex.skip_ws()
        if self.data[lex.pos:lex.pos + 4] == b"xref":
            lex.pos += 4
            self._read_xref_table(lex)
            trailer = self._read_trailer(lex)
        else:
            trailer = self._read_xref_stream(lex)
        for key, value in trailer.items():
            self.trailer.setdefault(key, value)
        prev = trailer.get("Prev")
        return int(prev) if isinstance(prev, (int, float)) else None

    def _read_xref_table(self, lex: Lexer) -> None:
        while True:
            lex.skip_ws()
            m = re.match(rb"(\d+)\s+(\d+)", self.data[lex.pos:lex.pos + 40])
            if not m:
                return
            first, count = int(m.group(1)), int(m.group(2))
            lex.pos += m.end()
            lex.skip_ws()
            for i in range(count):
                entry = self.data[lex.pos:lex.pos + 20]
                em = re.match(rb"(\d{10})\s+(\d{5})\s+([nf])", entry)
                if not em:
                    raise NotAPdf("malformed xref entry")
                if em.group(3) == b"n":
                    self.xref.setdefault(first + i, ("raw", int(em.group(1))))
                lex.pos += em.end()
                while lex.pos < len(self.data) and self.data[lex.pos] in b" \r\n":
                    lex.pos += 1

    def _read_trailer(self, lex: Lexer) -> dict:
        lex.skip_ws()
        if self.data[lex.pos:lex.pos + 7] != b"trailer":
            return {}
        lex.pos += 7
        trailer = lex.read_object()
        return trailer if isinstance(trailer, dict) else {}

    def _read_xref_stream(self, lex: Lexer) -> dict:
        # `N G obj` header then the stream object
        lex.skip_ws()
        header = re.match(rb"(\d+)\s+(\d+)\s+obj", self.data[lex.pos:lex.pos + 40])
        if not header:
            raise NotAPdf("expected xref stream object")
        lex.pos += header.end()
        obj = lex.read_object()
        if not isinstance(obj, StreamObject) or str(obj.dictionary.get("Type")) != "XRef":
            raise NotAPdf("startxref does not point at an xref section")
        d = obj.dictionary
        data = decode_stream(obj, self._resolve_simple)
        widths = [int(w) for w in d["W"]]
        size = int(d["Size"])
        index = d.get("Index", [0, size])
        fields = len(widths)
        entry_len = sum(widths)
        pos = 0
        pairs = [(int(index[i]), int(index[i + 1])) for i in range(0, len(index), 2)]
        for first, count in pairs:
            for i in range(count):
                raw = data[pos:pos + entry_len]
                pos += entry_len
                if len(raw) < entry_len:
                    return d
                vals = []
                off = 0
                for w in widths:
                    vals.append(int.from_bytes(raw[off:off + w], "big") if w else None)
                    off += w
                ftype = vals[0] if widths[0] else 1
                num = first + i
                if num in self.xref:
                    continue
                if ftype == 1:
                    self.xref[num] = ("raw", vals[1])
                elif ftype == 2:
                    self.xref[num] = ("objstm", vals[1], vals[2] or 0)
        return d

    def _scan_objects(self) -> None:
        """Brute-force recovery: index every `N G obj` in the file."""
        for m in re.finditer(rb"(?:^|[\r\n>\s])(\d+)\s+(\d+)\s+obj\b", self.data):
            self.xref[int(m.group(1))] = ("raw", m.start(1))

    def _recover_trailer(self) -> None:
        m = None
        for m in re.finditer(rb"trailer", self.data):
            pass
        if m:
            lex = Lexer(self.data, m.end())
            obj = lex.read_object()
            if isinstance(obj, dict):
                self.trailer = obj
                return
        # last resort: find the catalog by scanning
        for num in self.xref:
            obj = self.get_object(num)
            d = obj.dictionary if isinstance(obj, StreamObject) else obj
            if isinstance(d, dict) and str(d.get("Type")) == "Catalog":
                self.trailer = {"Root": Ref(num, 0)}
                return
        raise NotAPdf("trailer not recoverable")

    # -- object access --

    def _resolve_simple(self, obj: Any) -> Any:
        return self.resolve(obj)

    def get_object(self, num: int) -> Any:
        if num in self._cache:
            return self._cache[num]
        entry = self.xref.get(num)
        if entry is None:
            return None
        if entry[0] == "raw":
            value = self._parse_at(entry[1], num)
        else:
            value = self._from_objstm(entry[1], entry[2], num)
        self._cache[num] = value
        return value

    def _parse_at(self, offset: int, expect_num: int) -> Any:
        m = re.match(rb"\s*(\d+)\s+(\d+)\s+obj", self.data[offset:offset + 64])
        if not m:
            raise NotAPdf(f"object {expect_num} not at recorded offset")
        lex = Lexer(self.data, offset + m.end())
        return lex.read_object()

    def _from_objstm(self, stm_num: int, idx: int, obj_num: int) -> Any:
        if stm_num not in self._objstm_cache:
            stm = self.get_object(stm_num)
            if not isinstance(stm, StreamObject):
                raise NotAPdf("object stream missing")
            data = decode_stream(stm, self.resolve)
            n = int(self.resolve(stm.dictionary["N"]))
            first = int(self.resolve(stm.dictionary["First"]))
            head = Lexer(data, 0)
            offsets = []
            for _ in range(n):
                head.skip_ws()
                onum = int(head.read_regular_run())
                head.skip_ws()
                ooff = int(head.read_regular_run())
                offsets.append((onum, ooff))
            objs = []
            for onum, ooff in offsets:
                body = Lexer(data, first + ooff)
                objs.append((onum, body.read_object()))
            self._objstm_cache[stm_num] = objs
        for onum, obj in self._objstm_cache[stm_num]:
            if onum == obj_num:
                return obj
        return None

    def resolve(self, obj: Any, depth: int = 0) -> Any:
        while isinstance(obj, Ref):
            if depth > 32:
                raise NotAPdf("reference cycle")
            obj = self.get_object(obj.num)
            depth += 1
        return obj

    def stream_bytes(self, obj: Any) -> bytes:
        obj = self.resolve(obj)
        if not isinstance(obj, StreamObject):
            raise NotAPdf("expected a stream object")
        return decode_stream(obj, self.resolve)

    # -- page tree --

    def catalog(self) -> dict:
        root = self.resolve(self.trailer.get("Root"))
        if not isinstance(root, dict):
            raise NotAPdf("catalog missing")
        return root

    def pages(self) -> list[dict]:
        """Flattened page dictionaries with Resources/MediaBox inherited."""
        out: list[dict] = []
        root = self.resolve(self.catalog().get("Pages"))
        if not isinstance(root, dict):
            raise NotAPdf("page tree missing")

        inheritable = ("Resources", "MediaBox", "CropBox", "Rotate")

        def walk(node: dict, inherited: dict, depth: int) -> None:
            if depth > 64:
                raise NotAPdf("page tree too deep")
            merged = dict(inherited)
            for key in inheritable:
                if key in node:
                    merged[key] = node[key]
            ntype = str(self.resolve(node.get("Type", "")))
            kids = self.resolve(node.get("Kids"))
            if ntype == "Page" or (ntype != "Pages" and kids is None):
                page = dict(node)
                for key in inheritable:
                    page.setdefault(key, merged.get(key))
                out.append(page)
                return
            for kid in kids or []:
                kid = self.resolve(kid)
                if isinstance(kid, dict):
                    walk(kid, merged, depth + 1)

        walk(root, {}, 0)
        return out
