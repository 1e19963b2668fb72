import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgforge.ntriples import (
    ParseError,
    format_triple,
    parse_ntriples,
    serialize_ntriples,
)
from kgforge.terms import BlankNode, Iri, Literal, Triple
from kgforge.vocab import DOAP, RDF, XSD


def test_literal_escaping():
    t = Triple(Iri("urn:a"), Iri("urn:b"), Literal('x"y'))
    assert format_triple(t) == '<urn:a> <urn:b> "x\\"y" .'


def test_listing_style_type_triple():
    t = Triple(
        Iri("https://w3id.org/reproduceme/repository_1"),
        Iri(RDF + "type"),
        Iri(DOAP + "GitRepository"),
    )
    assert format_triple(t) == (
        "<https://w3id.org/reproduceme/repository_1> "
        "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
        "<http://usefulinc.com/ns/doap#GitRepository> ."
    )


def test_empty_stream():
    assert serialize_ntriples([]) == b""
    assert list(parse_ntriples(b"")) == []


def test_typed_literal_parses():
    got = list(parse_ntriples('<urn:a> <urn:b> "1"^^<' + XSD + "integer> ."))
    assert got == [Triple(Iri("urn:a"), Iri("urn:b"), Literal("1", datatype=XSD + "integer"))]


def test_language_literal_parses():
    got = list(parse_ntriples('<urn:a> <urn:b> "hei"@no .'))
    assert got == [Triple(Iri("urn:a"), Iri("urn:b"), Literal("hei", language="no"))]


def test_missing_object_is_parse_error():
    with pytest.raises(ParseError) as exc:
        list(parse_ntriples("<urn:a> <urn:b> ."))
    assert exc.value.line == 1


def test_comments_and_blank_lines_skipped():
    text = "# header\n\n<urn:a> <urn:b> <urn:c> . # trailing\n"
    assert len(list(parse_ntriples(text))) == 1


def test_control_characters_never_raw():
    t = Triple(Iri("urn:a"), Iri("urn:b"), Literal("a\x01b\nc"))
    line = format_triple(t)
    assert all(ord(c) >= 0x20 for c in line)
    assert list(parse_ntriples(line))[0] == t


def test_strict_ascii_mode_round_trips():
    t = Triple(Iri("urn:é"), Iri("urn:b"), Literal("skål \U0001f377"))
    line = format_triple(t, strict_ascii=True)
    assert line.isascii()
    assert list(parse_ntriples(line))[0] == t
    # default mode keeps raw UTF-8; both spellings parse to the same triple
    assert list(parse_ntriples(format_triple(t)))[0] == t


_safe_text = st.text(
    alphabet=st.characters(blacklist_categories=("Cs",)), max_size=40
)
_iris = st.builds(
    lambda s: Iri(
        "urn:x:"
        + "".join(c for c in s if ord(c) > 0x20 and ord(c) != 0x7F and c not in '<>"{}|^`\\')
    ),
    _safe_text,
)
_literals = st.one_of(
    st.builds(Literal, _safe_text),
    st.builds(lambda s: Literal(s, datatype=XSD + "integer"), _safe_text),
    st.builds(lambda s: Literal(s, language="en"), _safe_text),
)
_subjects = st.one_of(_iris, st.builds(BlankNode, st.from_regex(r"[A-Za-z0-9][A-Za-z0-9_-]{0,8}", fullmatch=True)))
_triples = st.builds(Triple, _subjects, _iris, st.one_of(_iris, _literals, _subjects))


@settings(max_examples=200, deadline=None)
@given(st.lists(_triples, max_size=20))
def test_round_trip_property(triples):
    assert list(parse_ntriples(serialize_ntriples(triples))) == triples


@settings(max_examples=50, deadline=None)
@given(st.lists(_triples, max_size=10))
def test_round_trip_strict_ascii(triples):
    assert list(parse_ntriples(serialize_ntriples(triples, strict_ascii=True))) == triples
