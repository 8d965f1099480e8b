"""The ``ncm v1`` map description format.

One statement per line, ``#`` starts a comment, blank lines are ignored::

    map "EIS success map"
    threshold 0.5
    concept x1 "Users' involvement"
    concept x2 "Speedy prototype development"
    edge x1 x2 0.8
    edge x4 x9 I

Weights are decimals in [-1, 1] with at most 9 fractional digits, or the
uppercase literal ``I``. Concepts are indexed in declaration order.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .model import (
    CognitiveMap,
    Concept,
    Diagnostic,
    Edge,
    ID_RE,
    NCMError,
    concept_location,
    edge_location,
    validate,
    weight_text,
)
from .neutro import DEFAULT_THRESHOLD, INDET, NeutroValue, format_real

MAX_FRACTION_DIGITS = 9

_TOKEN = re.compile(
    r"""(?P<ws>\s+)
      | (?P<str>"(?:[^"\\]|\\.)*")
      | (?P<open>"[^\n]*)
      | (?P<comment>\#.*)
      | (?P<word>[^\s"\#]+)""",
    re.VERBOSE,
)
_NUMBER = re.compile(r"[+-]?(?:(\d+)(?:\.(\d*))?|\.(\d+))\Z")
_UNESCAPE = re.compile(r"\\(.)")


@dataclass(frozen=True)
class ParseError:
    line: int
    column: int
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column} {self.code} {self.message}"


class MapSyntaxError(NCMError, ValueError):
    """Raised by :func:`parse_map`; carries every positioned error found."""

    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        super().__init__("\n".join(str(e) for e in errors))


@dataclass(frozen=True)
class MapDocument:
    source: str
    map: CognitiveMap
    # diagnostic location string -> (line, column)
    locations: dict[str, tuple[int, int]] = field(default_factory=dict)

    def diagnostics(self) -> list[tuple[int, int, Diagnostic]]:
        """Model-level diagnostics with source positions, in file order."""
        out = []
        for d in validate(self.map):
            line, col = self.locations.get(d.location, (1, 1))
            out.append((line, col, d))
        out.sort(key=lambda t: (t[0], t[1]))
        return out


@dataclass
class _Token:
    kind: str
    text: str
    col: int

    @property
    def value(self) -> str:
        if self.kind == "str":
            return _UNESCAPE.sub(r"\1", self.text[1:-1])
        return self.text


def _tokenize(line: str, lineno: int, errors: list[ParseError]) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        kind = m.lastgroup
        if kind == "open":
            errors.append(ParseError(lineno, pos + 1, "SYNTAX", "unterminated string literal"))
            return []
        if kind == "comment":
            break
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), pos + 1))
        pos = m.end()
    return tokens


def parse_number(text: str) -> float | None:
    """Parse a plain decimal (no exponent); None if malformed."""
    m = _NUMBER.match(text)
    if not m:
        return None
    return float(text)


def _fraction_digits(text: str) -> int:
    m = _NUMBER.match(text)
    return len(m.group(2) or m.group(3) or "")


def _decode(source: str | bytes, errors: list[ParseError]) -> str:
    if isinstance(source, str):
        return source
    try:
        return source.decode("utf-8")
    except UnicodeDecodeError as exc:
        head = source[: exc.start]
        line = head.count(b"\n") + 1
        col = exc.start - (head.rfind(b"\n") + 1) + 1
        errors.append(ParseError(line, col, "ENCODING", f"invalid UTF-8 byte 0x{source[exc.start]:02x}"))
        return source.decode("utf-8", errors="replace")


def parse_map(source: str | bytes) -> MapDocument:
    """Parse ``ncm v1`` text.

    Raises :class:`MapSyntaxError` listing every malformed statement. Semantic
    problems that the model can represent (self-loops, duplicate edges,
    weights outside [-1, 1]) are left for :func:`ncm.model.validate` and are
    reachable with positions via :meth:`MapDocument.diagnostics`.
    """
    errors: list[ParseError] = []
    text = _decode(source, errors)

    name = None
    thresh = None
    concepts: list[Concept] = []
    concept_ids: set[str] = set()
    pending_edges: list[tuple[_Token, _Token, NeutroValue, int]] = []
    locations: dict[str, tuple[int, int]] = {}
    seen_statement = False

    def error(lineno, col, code, msg):
        errors.append(ParseError(lineno, col, code, msg))

    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokenize(line, lineno, errors)
        if not toks:
            continue
        head, args = toks[0], toks[1:]
        kw = head.text if head.kind == "word" else None

        if kw == "map":
            if name is not None:
                error(lineno, head.col, "DUPLICATE_MAP", "map name given more than once")
            elif seen_statement:
                error(lineno, head.col, "MAP_NOT_FIRST", "map statement must come first")
            if len(args) != 1 or args[0].kind != "str":
                error(lineno, head.col, "ARITY", 'expected: map "<name>"')
            elif name is None:
                name = args[0].value
        elif kw == "threshold":
            if thresh is not None:
                error(lineno, head.col, "DUPLICATE_THRESHOLD", "threshold given more than once")
            if len(args) != 1 or args[0].kind != "word":
                error(lineno, head.col, "ARITY", "expected: threshold <real>")
            else:
                value = _number_token(args[0], lineno, error)
                if value is not None and thresh is None:
                    thresh = value
                    locations["map"] = (lineno, head.col)
        elif kw == "concept":
            if not (2 <= len(args) <= 3) or args[0].kind != "word" or any(a.kind != "str" for a in args[1:]):
                error(lineno, head.col, "ARITY", 'expected: concept <id> "<label>" ["<description>"]')
            else:
                cid = args[0].text
                label = args[1].value
                desc = args[2].value if len(args) == 3 else None
                if not ID_RE.match(cid):
                    error(lineno, args[0].col, "BAD_ID", f"invalid concept id {cid!r}")
                elif cid in concept_ids:
                    error(lineno, args[0].col, "DUPLICATE_CONCEPT", f"concept {cid!r} already declared")
                elif not label:
                    error(lineno, args[1].col, "EMPTY_LABEL", f"concept {cid!r} has an empty label")
                else:
                    concept_ids.add(cid)
                    c = Concept(cid, label, desc)
                    concepts.append(c)
                    locations[concept_location(c)] = (lineno, head.col)
        elif kw == "edge":
            if len(args) != 3 or any(a.kind != "word" for a in args):
                error(lineno, head.col, "ARITY", "expected: edge <from> <to> <weight>")
            else:
                src, dst, wtok = args
                weight = _weight_token(wtok, lineno, error)
                if weight is not None:
                    pending_edges.append((src, dst, weight, lineno))
        else:
            error(lineno, head.col, "UNKNOWN_STATEMENT", f"unknown statement {head.text!r}")
        seen_statement = True

    edges = []
    for src, dst, weight, lineno in pending_edges:
        ok = True
        for tok in (src, dst):
            if tok.text not in concept_ids:
                error(lineno, tok.col, "UNKNOWN_CONCEPT", f"edge refers to undeclared concept {tok.text!r}")
                ok = False
        if ok:
            e = Edge(src.text, dst.text, weight)
            locations[edge_location(len(edges), e)] = (lineno, 1)
            edges.append(e)

    if errors:
        errors.sort(key=lambda e: (e.line, e.column))
        raise MapSyntaxError(errors)

    cmap = CognitiveMap(
        name if name is not None else "",
        tuple(concepts),
        tuple(edges),
        DEFAULT_THRESHOLD if thresh is None else thresh,
    )
    return MapDocument(text, cmap, locations)


def _number_token(tok: _Token, lineno: int, error) -> float | None:
    value = parse_number(tok.text)
    if value is None or not math.isfinite(value):
        error(lineno, tok.col, "BAD_NUMBER", f"not a decimal number: {tok.text!r}")
        return None
    if _fraction_digits(tok.text) > MAX_FRACTION_DIGITS:
        error(lineno, tok.col, "TOO_MANY_DIGITS", f"more than {MAX_FRACTION_DIGITS} fractional digits: {tok.text!r}")
        return None
    return value


def _weight_token(tok: _Token, lineno: int, error) -> NeutroValue | None:
    if tok.text == "I":
        return INDET
    if tok.text == "i":
        error(lineno, tok.col, "BAD_WEIGHT", "indeterminacy is written as uppercase 'I'")
        return None
    if parse_number(tok.text) is None:
        error(lineno, tok.col, "BAD_WEIGHT", f"weight must be a decimal or I, got {tok.text!r}")
        return None
    value = _number_token(tok, lineno, error)
    if value is None:
        return None
    if value == 0:
        error(lineno, tok.col, "ZERO_WEIGHT", "weight 0 means no edge; omit the statement")
        return None
    return NeutroValue(value)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def serialize_map(cmap: CognitiveMap) -> str:
    """Canonical text: header, threshold, concepts, then edges by (source, target) index."""
    lines = [f"map {_quote(cmap.name)}", f"threshold {format_real(cmap.default_threshold)}"]
    for c in cmap.concepts:
        line = f"concept {c.id} {_quote(c.label)}"
        if c.description is not None:
            line += " " + _quote(c.description)
        lines.append(line)
    index = {c.id: i for i, c in enumerate(cmap.concepts)}
    for e in sorted(cmap.edges, key=lambda e: (index[e.source], index[e.target])):
        lines.append(f"edge {e.source} {e.target} {weight_text(e.weight)}")
    return "\n".join(lines) + "\n"


def read_map_document(path: str | os.PathLike) -> MapDocument:
    return parse_map(Path(path).read_bytes())


def load_map(path: str | os.PathLike) -> CognitiveMap:
    return read_map_document(path).map


EIS_ASSET = "eis_success.ncm"


def eis_asset_text() -> str:
    return resources.files("ncm").joinpath("assets", EIS_ASSET).read_text(encoding="utf-8")


def load_eis_map() -> CognitiveMap:
    """The bundled nine-factor EIS success map."""
    return parse_map(eis_asset_text()).map
