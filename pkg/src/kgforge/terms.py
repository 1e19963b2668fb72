"""RDF term and triple model.

Terms are immutable values: construct once, share freely. Invalid terms are
unconstructible -- the constructors validate, so everything downstream
(serializer, store, query engine) can assume well-formed data.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

XSD_STRING = "http://www.w3.org/2001/XMLSchema#string"

# Characters that may never appear in an IRI we store. Control characters are
# checked separately.
_IRI_BAD = set(' <>"{}|^`\\')

_BNODE_LABEL_RE = re.compile(r"[A-Za-z0-9][A-Za-z0-9_-]*\Z")
_LANG_TAG_RE = re.compile(r"[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*\Z")


class TermError(ValueError):
    """Raised when a term or triple would violate the model invariants."""


class UnknownPrefix(KeyError):
    """CURIE expansion hit a prefix label that is not declared."""

    def __init__(self, label: str):
        super().__init__(label)
        self.label = label

    def __str__(self) -> str:
        return f"unknown prefix label: {self.label!r}"


class CurieSyntaxError(ValueError):
    """The given string is not of the form 'label:local'."""


def _check_iri(value: str) -> None:
    if not value:
        raise TermError("IRI must be non-empty")
    for ch in value:
        if ch in _IRI_BAD or ord(ch) < 0x20 or ord(ch) == 0x7F:
            raise TermError(f"invalid character {ch!r} in IRI {value!r}")


@dataclass(frozen=True, slots=True)
class Iri:
    value: str

    def __post_init__(self):
        _check_iri(self.value)

    def __str__(self) -> str:
        return f"<{self.value}>"


@dataclass(frozen=True, slots=True)
class BlankNode:
    label: str

    def __post_init__(self):
        if not _BNODE_LABEL_RE.match(self.label):
            raise TermError(f"invalid blank node label {self.label!r}")

    def __str__(self) -> str:
        return f"_:{self.label}"


@dataclass(frozen=True, slots=True)
class Literal:
    lexical: str
    datatype: str | None = None
    language: str | None = None

    def __post_init__(self):
        if self.datatype is not None and self.language is not None:
            raise TermError("literal cannot carry both datatype and language")
        if self.datatype is not None:
            _check_iri(self.datatype)
        if self.language is not None and not _LANG_TAG_RE.match(self.language):
            raise TermError(f"invalid language tag {self.language!r}")

    def __str__(self) -> str:
        out = '"' + self.lexical.replace("\\", "\\\\").replace('"', '\\"') + '"'
        if self.language:
            return f"{out}@{self.language}"
        if self.datatype:
            return f"{out}^^<{self.datatype}>"
        return out


Term = Iri | BlankNode | Literal


@dataclass(frozen=True, slots=True)
class Variable:
    """A query variable; shares the term slot in triple patterns."""

    name: str

    def __str__(self) -> str:
        return f"?{self.name}"


def canonical_term(term: Term) -> Term:
    """Collapse explicitly string-typed literals onto plain literals.

    A plain literal and the same lexical form typed as a string denote the
    same value; joins and equality tests go through this so graphs produced
    by the materializer (plain literals) line up with remote endpoints that
    return typed ones.
    """
    if isinstance(term, Literal) and term.datatype == XSD_STRING:
        return Literal(term.lexical)
    return term


@dataclass(frozen=True, slots=True)
class Triple:
    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise TermError("triple subject cannot be a literal")
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise TermError(f"bad subject: {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise TermError(f"triple predicate must be an IRI, got {self.predicate!r}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise TermError(f"bad object: {self.object!r}")


@dataclass
class PrefixMap:
    """Association of prefix labels to namespace IRIs."""

    entries: dict[str, str] = field(default_factory=dict)

    def bind(self, label: str, namespace: str) -> None:
        _check_iri(namespace)
        self.entries[label] = namespace

    def copy(self) -> "PrefixMap":
        return PrefixMap(dict(self.entries))

    def merged(self, other: "PrefixMap") -> "PrefixMap":
        out = self.copy()
        out.entries.update(other.entries)
        return out

    def __contains__(self, label: str) -> bool:
        return label in self.entries

    def __getitem__(self, label: str) -> str:
        return self.entries[label]


def expand_curie(curie: str, prefixes: PrefixMap) -> Iri:
    """Expand 'label:local' against the prefix map; the local part is kept as-is."""
    if ":" not in curie:
        raise CurieSyntaxError(f"not a CURIE: {curie!r}")
    label, local = curie.split(":", 1)
    if label not in prefixes:
        raise UnknownPrefix(label)
    return Iri(prefixes[label] + local)
