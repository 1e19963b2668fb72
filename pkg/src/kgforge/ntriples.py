"""Line-oriented N-Triples serialization and parsing.

One triple per line terminated by ` .`, UTF-8, LF line endings. The parser
also exposes a token-level iterator so bulk loaders can intern repeated terms
without re-validating them on every occurrence.
"""
from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .terms import BlankNode, Iri, Literal, Term, TermError, Triple


class ParseError(ValueError):
    def __init__(self, message: str, line: int, offset: int = 0):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.offset = offset


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

_ESCAPES = {ord("\\"): "\\\\", ord('"'): '\\"', ord("\n"): "\\n",
             ord("\r"): "\\r", ord("\t"): "\\t"}
for _c in range(0x20):
    _ESCAPES.setdefault(_c, "\\u%04X" % _c)
_ESCAPES[0x7F] = "\\u007F"


def _escape_literal(text: str, strict_ascii: bool) -> str:
    out = text.translate(_ESCAPES)
    if strict_ascii and not out.isascii():
        out = "".join(
            ch if ord(ch) < 0x80 else
            ("\\u%04X" % ord(ch) if ord(ch) <= 0xFFFF else "\\U%08X" % ord(ch))
            for ch in out
        )
    return out


def _escape_iri(value: str, strict_ascii: bool) -> str:
    if strict_ascii and not value.isascii():
        return "".join(
            ch if ord(ch) < 0x80 else
            ("\\u%04X" % ord(ch) if ord(ch) <= 0xFFFF else "\\U%08X" % ord(ch))
            for ch in value
        )
    return value


def format_term(term: Term, strict_ascii: bool = False) -> str:
    if isinstance(term, Iri):
        return f"<{_escape_iri(term.value, strict_ascii)}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        quoted = f'"{_escape_literal(term.lexical, strict_ascii)}"'
        if term.language:
            return f"{quoted}@{term.language}"
        if term.datatype:
            return f"{quoted}^^<{_escape_iri(term.datatype, strict_ascii)}>"
        return quoted
    raise TypeError(f"not a serializable term: {term!r}")


def format_triple(triple: Triple, strict_ascii: bool = False) -> str:
    return (
        f"{format_term(triple.subject, strict_ascii)} "
        f"{format_term(triple.predicate, strict_ascii)} "
        f"{format_term(triple.object, strict_ascii)} ."
    )


def serialize_ntriples(triples: Iterable[Triple], strict_ascii: bool = False) -> bytes:
    lines = [format_triple(t, strict_ascii) for t in triples]
    if not lines:
        return b""
    return ("\n".join(lines) + "\n").encode("utf-8")


def write_ntriples(triples: Iterable[Triple], out: TextIO, strict_ascii: bool = False) -> int:
    """Stream triples to a text file object; returns the number written."""
    n = 0
    for t in triples:
        out.write(format_triple(t, strict_ascii))
        out.write("\n")
        n += 1
    return n


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_SIMPLE_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
                   '"': '"', "'": "'", "\\": "\\"}


def _unescape(text: str, line: int) -> str:
    if "\\" not in text:
        return text
    out: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= n:
            raise ParseError("dangling backslash", line)
        esc = text[i + 1]
        if esc in _SIMPLE_ESCAPES:
            out.append(_SIMPLE_ESCAPES[esc])
            i += 2
        elif esc == "u":
            if i + 6 > n:
                raise ParseError("truncated \\u escape", line)
            out.append(chr(int(text[i + 2:i + 6], 16)))
            i += 6
        elif esc == "U":
            if i + 10 > n:
                raise ParseError("truncated \\U escape", line)
            out.append(chr(int(text[i + 2:i + 10], 16)))
            i += 10
        else:
            raise ParseError(f"unknown escape \\{esc}", line)
    return "".join(out)


def _scan_term(line: str, pos: int, lineno: int, *, as_object: bool) -> tuple[str, int]:
    """Return (token, next position) for the term starting at pos."""
    n = len(line)
    ch = line[pos]
    if ch == "<":
        end = line.find(">", pos + 1)
        if end < 0:
            raise ParseError("unterminated IRI", lineno, pos)
        return line[pos:end + 1], end + 1
    if ch == "_":
        if pos + 1 >= n or line[pos + 1] != ":":
            raise ParseError("malformed blank node", lineno, pos)
        end = pos + 2
        while end < n and line[end] not in " \t.<":
            end += 1
        return line[pos:end], end
    if ch == '"' and as_object:
        # find the closing quote, skipping escaped ones
        i = pos + 1
        while True:
            i = line.find('"', i)
            if i < 0:
                raise ParseError("unterminated literal", lineno, pos)
            backslashes = 0
            j = i - 1
            while j > pos and line[j] == "\\":
                backslashes += 1
                j -= 1
            if backslashes % 2 == 0:
                break
            i += 1
        end = i + 1
        if end < n and line[end] == "@":
            while end < n and line[end] not in " \t":
                end += 1
        elif end + 1 < n and line[end] == "^" and line[end + 1] == "^":
            if end + 2 >= n or line[end + 2] != "<":
                raise ParseError("malformed datatype", lineno, end)
            close = line.find(">", end + 3)
            if close < 0:
                raise ParseError("unterminated datatype IRI", lineno, end)
            end = close + 1
        return line[pos:end], end
    raise ParseError(f"unexpected character {ch!r}", lineno, pos)


def _skip_ws(line: str, pos: int) -> int:
    n = len(line)
    while pos < n and line[pos] in " \t":
        pos += 1
    return pos


def iter_triple_tokens(text: str) -> Iterator[tuple[int, str, str, str]]:
    """Yield (line number, subject token, predicate token, object token).

    Tokens are raw source slices; feed them to parse_term_token for full
    validation and unescaping. Comment lines and blank lines are skipped.
    """
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        pos = 0
        s_tok, pos = _scan_term(line, pos, lineno, as_object=False)
        pos = _skip_ws(line, pos)
        if pos >= len(line) or line[pos] != "<":
            raise ParseError("expected predicate IRI", lineno, pos)
        p_tok, pos = _scan_term(line, pos, lineno, as_object=False)
        pos = _skip_ws(line, pos)
        if pos >= len(line) or line[pos] == ".":
            raise ParseError("missing object term", lineno, pos)
        o_tok, pos = _scan_term(line, pos, lineno, as_object=True)
        pos = _skip_ws(line, pos)
        if pos >= len(line) or line[pos] != ".":
            raise ParseError("expected terminating '.'", lineno, pos)
        rest = line[pos + 1:].lstrip()
        if rest and not rest.startswith("#"):
            raise ParseError(f"trailing content after '.': {rest!r}", lineno, pos)
        yield lineno, s_tok, p_tok, o_tok


def parse_term_token(token: str, lineno: int = 0) -> Term:
    if token.startswith("<"):
        return Iri(_unescape(token[1:-1], lineno))
    if token.startswith("_:"):
        return BlankNode(token[2:])
    if token.startswith('"'):
        if token.endswith('"'):
            return Literal(_unescape(token[1:-1], lineno))
        at = token.rfind("@")
        caret = token.rfind('"^^<')
        if caret >= 0 and token.endswith(">"):
            return Literal(
                _unescape(token[1:caret], lineno),
                datatype=_unescape(token[caret + 4:-1], lineno),
            )
        if at >= 0:
            return Literal(_unescape(token[1:at - 1], lineno), language=token[at + 1:])
        raise ParseError(f"malformed literal token {token!r}", lineno)
    raise ParseError(f"malformed term token {token!r}", lineno)


def parse_ntriples(data: bytes | str) -> Iterator[Triple]:
    """Parse N-Triples text into triples; round-trips serializer output."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    for lineno, s_tok, p_tok, o_tok in iter_triple_tokens(text):
        try:
            yield Triple(
                parse_term_token(s_tok, lineno),
                parse_term_token(p_tok, lineno),
                parse_term_token(o_tok, lineno),
            )
        except TermError as exc:
            raise ParseError(str(exc), lineno) from exc
