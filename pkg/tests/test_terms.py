import pytest

from kgforge.terms import (
    BlankNode,
    CurieSyntaxError,
    Iri,
    Literal,
    PrefixMap,
    TermError,
    Triple,
    UnknownPrefix,
    canonical_term,
    expand_curie,
)
from kgforge.vocab import XSD


def test_iri_rejects_bad_characters():
    for bad in ["a b", "a<b", 'a"b', "a{b}", "a|b", "a^b", "a`b", "a\\b", "a\nb", ""]:
        with pytest.raises(TermError):
            Iri(bad)


def test_literal_datatype_language_exclusive():
    Literal("x", datatype=XSD + "integer")
    Literal("x", language="en")
    with pytest.raises(TermError):
        Literal("x", datatype=XSD + "integer", language="en")


def test_blank_node_label_shape():
    BlankNode("b0")
    BlankNode("0ab-c_d")
    for bad in ["", "-x", "_x", "a b", "a.b"]:
        with pytest.raises(TermError):
            BlankNode(bad)


def test_triple_positional_invariants():
    a, b = Iri("urn:a"), Iri("urn:b")
    Triple(a, b, Literal("x"))
    Triple(BlankNode("n"), b, a)
    with pytest.raises(TermError):
        Triple(Literal("x"), b, a)
    with pytest.raises(TermError):
        Triple(a, Literal("x"), a)
    with pytest.raises(TermError):
        Triple(a, BlankNode("n"), a)


def test_expand_curie_project_namespace():
    prefixes = PrefixMap({"repr": "https://w3id.org/reproduceme/"})
    assert expand_curie("repr:Notebook", prefixes) == Iri(
        "https://w3id.org/reproduceme/Notebook"
    )


def test_expand_curie_empty_local_part():
    prefixes = PrefixMap({"rdfs": "http://www.w3.org/2000/01/rdf-schema#"})
    assert expand_curie("rdfs:", prefixes) == Iri("http://www.w3.org/2000/01/rdf-schema#")


def test_expand_curie_errors():
    with pytest.raises(UnknownPrefix) as exc:
        expand_curie("x:y", PrefixMap())
    assert exc.value.label == "x"
    with pytest.raises(CurieSyntaxError):
        expand_curie("nocolon", PrefixMap())


def test_expand_curie_injective_over_locals():
    prefixes = PrefixMap({"r": "urn:ns/"})
    locals_ = ["a", "b", "ab", "a/b", "", "x_1"]
    expanded = {expand_curie(f"r:{l}", prefixes).value for l in locals_}
    assert len(expanded) == len(locals_)


def test_canonical_term_collapses_string_datatype():
    plain = Literal("x")
    typed = Literal("x", datatype=XSD + "string")
    assert plain != typed
    assert canonical_term(typed) == plain
    assert canonical_term(Literal("x", language="en")) == Literal("x", language="en")
    assert canonical_term(Iri("urn:a")) == Iri("urn:a")
