"""Streaming line-oriented N-Triples parser.

Handles the N-Triples subset needed for walk generation: IRIs, blank
nodes, and literals with optional language tag or datatype. Input may be
plain text or gzip-compressed (decided by file extension).
"""

from __future__ import annotations

import gzip
import io
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO, Union


class ParseError(ValueError):
    """Raised for a malformed statement in strict mode."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"malformed statement at line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: str | None = None
    language: str | None = None


@dataclass(frozen=True)
class BlankNode:
    label: str


@dataclass(frozen=True)
class Triple:
    subject: Union[str, BlankNode]
    predicate: str
    object: Union[str, BlankNode, Literal]


_ECHAR = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_ECHAR_INV = {v: "\\" + k for k, v in _ECHAR.items() if v not in ("'",)}


def _unescape(raw: str, line_number: int) -> str:
    if "\\" not in raw:
        return raw
    out = []
    i = 0
    n = len(raw)
    while i < n:
        ch = raw[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= n:
            raise ParseError("dangling backslash", line_number)
        esc = raw[i + 1]
        if esc in _ECHAR:
            out.append(_ECHAR[esc])
            i += 2
        elif esc == "u" or esc == "U":
            width = 4 if esc == "u" else 8
            hexpart = raw[i + 2 : i + 2 + width]
            if len(hexpart) != width:
                raise ParseError("truncated unicode escape", line_number)
            try:
                out.append(chr(int(hexpart, 16)))
            except ValueError:
                raise ParseError(f"bad unicode escape \\{esc}{hexpart}", line_number)
            i += 2 + width
        else:
            raise ParseError(f"unknown escape \\{esc}", line_number)
    return "".join(out)


def _escape_literal(text: str) -> str:
    out = []
    for ch in text:
        if ch in _ECHAR_INV:
            out.append(_ECHAR_INV[ch])
        else:
            out.append(ch)
    return "".join(out)


def _escape_iri(text: str) -> str:
    out = []
    for ch in text:
        cp = ord(ch)
        if ch in ('"', "<", ">", "\\", "{", "}", "|", "^", "`") or cp <= 0x20:
            out.append("\\u%04X" % cp)
        else:
            out.append(ch)
    return "".join(out)


class _LineScanner:
    def __init__(self, line: str, line_number: int):
        self.line = line
        self.pos = 0
        self.line_number = line_number

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line_number)

    def skip_ws(self):
        while self.pos < len(self.line) and self.line[self.pos] in (" ", "\t"):
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.line)

    def expect(self, ch: str):
        if self.at_end() or self.line[self.pos] != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def read_iri(self) -> str:
        self.expect("<")
        end = self.line.find(">", self.pos)
        if end < 0:
            raise self.error("unterminated IRI")
        raw = self.line[self.pos : end]
        self.pos = end + 1
        return _unescape(raw, self.line_number)

    def read_blank(self) -> BlankNode:
        if not self.line.startswith("_:", self.pos):
            raise self.error("expected blank node")
        self.pos += 2
        start = self.pos
        while self.pos < len(self.line) and self.line[self.pos] not in (" ", "\t"):
            self.pos += 1
        if self.pos == start:
            raise self.error("empty blank node label")
        return BlankNode(self.line[start : self.pos])

    def read_quoted(self) -> str:
        self.expect('"')
        out_end = self.pos
        # find closing quote, skipping escaped ones
        while True:
            out_end = self.line.find('"', out_end)
            if out_end < 0:
                raise self.error("unterminated literal")
            backslashes = 0
            k = out_end - 1
            while k >= 0 and self.line[k] == "\\":
                backslashes += 1
                k -= 1
            if backslashes % 2 == 0:
                break
            out_end += 1
        raw = self.line[self.pos : out_end]
        self.pos = out_end + 1
        return _unescape(raw, self.line_number)

    def read_object(self) -> Union[str, BlankNode, Literal]:
        ch = self.line[self.pos]
        if ch == "<":
            return self.read_iri()
        if ch == "_":
            return self.read_blank()
        if ch == '"':
            lexical = self.read_quoted()
            if self.pos < len(self.line) and self.line[self.pos] == "@":
                self.pos += 1
                start = self.pos
                while self.pos < len(self.line) and self.line[self.pos] not in (" ", "\t", "."):
                    self.pos += 1
                if self.pos == start:
                    raise self.error("empty language tag")
                return Literal(lexical, language=self.line[start : self.pos])
            if self.line.startswith("^^", self.pos):
                self.pos += 2
                return Literal(lexical, datatype=self.read_iri())
            return Literal(lexical)
        raise self.error(f"unexpected object start {ch!r}")


def parse_statement(line: str, line_number: int = 1) -> Triple:
    """Parse a single N-Triples statement line into a Triple."""
    scanner = _LineScanner(line, line_number)
    scanner.skip_ws()
    ch = line[scanner.pos] if not scanner.at_end() else ""
    if ch == "<":
        subject: Union[str, BlankNode] = scanner.read_iri()
    elif ch == "_":
        subject = scanner.read_blank()
    else:
        raise scanner.error("expected subject IRI or blank node")
    scanner.skip_ws()
    predicate = scanner.read_iri()
    scanner.skip_ws()
    if scanner.at_end():
        raise scanner.error("missing object")
    obj = scanner.read_object()
    scanner.skip_ws()
    scanner.expect(".")
    scanner.skip_ws()
    if not scanner.at_end() and line[scanner.pos] != "#":
        raise scanner.error("trailing garbage after terminating dot")
    return Triple(subject, predicate, obj)


def serialize_triple(triple: Triple) -> str:
    """Render a Triple back to one canonical N-Triples line."""

    def term(t) -> str:
        if isinstance(t, BlankNode):
            return f"_:{t.label}"
        if isinstance(t, Literal):
            s = f'"{_escape_literal(t.lexical)}"'
            if t.language is not None:
                return s + f"@{t.language}"
            if t.datatype is not None:
                return s + f"^^<{_escape_iri(t.datatype)}>"
            return s
        return f"<{_escape_iri(t)}>"

    return f"{term(triple.subject)} {term(triple.predicate)} {term(triple.object)} ."


def open_ntriples(path: str) -> TextIO:
    """Open a plain or gzip-compressed N-Triples file as UTF-8 text."""
    if str(path).endswith(".gz"):
        return io.TextIOWrapper(gzip.open(path, "rb"), encoding="utf-8")
    return open(path, "r", encoding="utf-8")


def parse_ntriples(
    lines: Iterable[str],
    strict: bool = False,
    error_counter: list | None = None,
) -> Iterator[Triple]:
    """Yield one Triple per statement line.

    Comment and blank lines are skipped. Malformed lines raise ParseError
    in strict mode; in lenient mode they are skipped and counted into
    ``error_counter`` (a single-element list) when given.
    """
    for line_number, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            yield parse_statement(line.rstrip("\n"), line_number)
        except ParseError:
            if strict:
                raise
            if error_counter is not None:
                error_counter[0] += 1
