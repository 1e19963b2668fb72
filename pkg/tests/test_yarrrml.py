import pytest

from kgforge.terms import Iri, Literal
from kgforge.vocab import DOAP, PAV, RDF, RDFS, REPR
from kgforge.yarrrml import (
    ColumnRef,
    ConstantTerm,
    ConstantText,
    JoinRef,
    MappingSyntaxError,
    TemplateExpr,
    UnsupportedFeature,
    parse_template,
    parse_yarrrml,
    validate,
)

HEADERS = {
    "repositories": ["id", "repository", "article_id"],
    "notebooks": ["id", "name", "kernel", "language", "repository_id"],
}


def test_parses_two_maps_in_order(repo_notebook_mapping):
    doc = parse_yarrrml(repo_notebook_mapping)
    assert [m.name for m in doc.maps] == ["repositories", "notebooks"]

    repos = doc.maps[0]
    assert repos.source.path == "data/repositories.csv"
    assert repos.source.format == "csv"
    assert repos.subject == TemplateExpr(
        (ConstantText("https://w3id.org/reproduceme/repository_"), ColumnRef("id"))
    )
    assert len(repos.pos) == 3
    assert repos.pos[0].predicate == Iri(RDF + "type")
    assert repos.pos[0].object == ConstantTerm(Iri(DOAP + "GitRepository"))
    assert repos.pos[1].predicate == Iri(RDFS + "label")
    assert repos.pos[1].object == ColumnRef("repository")
    assert repos.pos[2].predicate == Iri(PAV + "retrievedFrom")
    assert repos.pos[2].object == JoinRef("article", "article_id", "id")

    notebooks = doc.maps[1]
    assert len(notebooks.pos) == 5
    assert notebooks.pos[0].object == ConstantTerm(Iri(REPR + "Notebook"))
    assert notebooks.pos[2].predicate == Iri(REPR + "kernel")
    assert notebooks.pos[4].object == JoinRef("repositories", "repository_id", "id")


def test_empty_po_list_is_valid():
    doc = parse_yarrrml(
        "mappings:\n  only:\n    sources: [x.csv~csv]\n    s: urn:thing_$(id)\n    po: []\n"
    )
    assert len(doc.maps) == 1
    assert doc.maps[0].pos == ()


def test_non_equal_join_function_rejected(repo_notebook_mapping):
    text = repo_notebook_mapping.replace("function: equal", "function: gt", 1)
    with pytest.raises(UnsupportedFeature) as exc:
        parse_yarrrml(text)
    assert exc.value.path == "mappings.repositories.po[2]"


def test_unknown_keys_rejected():
    with pytest.raises(MappingSyntaxError) as exc:
        parse_yarrrml(
            "mappings:\n  m:\n    sources: [x.csv~csv]\n    s: urn:a_$(id)\n    graphs: g\n"
        )
    assert "mappings.m" in str(exc.value)


def test_multi_source_map_expands_per_source():
    doc = parse_yarrrml(
        "mappings:\n  m:\n    sources:\n      - [a.csv~csv]\n      - [b.csv~csv]\n"
        "    s: urn:a_$(id)\n    po:\n      - [a, urn:Thing]\n"
    )
    assert [m.name for m in doc.maps] == ["m", "m-2"]
    assert {m.source.path for m in doc.maps} == {"a.csv", "b.csv"}
    assert all(m.group_name() == "m" for m in doc.maps)


def test_datatype_and_language_annotations():
    doc = parse_yarrrml(
        "prefixes:\n  xsd: http://www.w3.org/2001/XMLSchema#\n"
        "mappings:\n  m:\n    sources: [x.csv~csv]\n    s: urn:a_$(id)\n"
        "    po:\n      - [urn:p, $(n), xsd:integer]\n      - [urn:q, $(t), en~lang]\n"
    )
    po_dt, po_lang = doc.maps[0].pos
    assert po_dt.datatype == "http://www.w3.org/2001/XMLSchema#integer"
    assert po_lang.language == "en"


def test_constant_object_classification():
    doc = parse_yarrrml(
        "prefixes:\n  repr: https://w3id.org/reproduceme/\n"
        "mappings:\n  m:\n    sources: [x.csv~csv]\n    s: urn:a_$(id)\n"
        "    po:\n      - [urn:p, repr:Notebook]\n      - [urn:p, plain text]\n"
        "      - [urn:p, 'https://example.org/x']\n"
    )
    objs = [po.object for po in doc.maps[0].pos]
    assert objs[0] == ConstantTerm(Iri(REPR + "Notebook"))
    assert objs[1] == ConstantTerm(Literal("plain text"))
    assert objs[2] == ConstantTerm(Iri("https://example.org/x"))


def test_parse_is_deterministic(repo_notebook_mapping):
    assert parse_yarrrml(repo_notebook_mapping) == parse_yarrrml(repo_notebook_mapping)


def test_validate_clean(repo_notebook_mapping, article_mapping):
    doc = parse_yarrrml(repo_notebook_mapping)
    art = parse_yarrrml(article_mapping)
    doc.maps.extend(art.maps)
    headers = dict(HEADERS)
    headers["article"] = ["id", "title"]
    assert validate(doc, headers) == []


def test_validate_missing_column(repo_notebook_mapping, article_mapping):
    doc = parse_yarrrml(repo_notebook_mapping)
    doc.maps.extend(parse_yarrrml(article_mapping).maps)
    headers = dict(HEADERS)
    headers["article"] = ["id", "title"]
    headers["notebooks"] = ["id", "name", "language", "repository_id"]  # kernel missing
    diags = validate(doc, headers)
    assert len(diags) == 1
    assert (diags[0].kind, diags[0].map_name, diags[0].detail) == (
        "missing_column",
        "notebooks",
        "kernel",
    )


def test_validate_unknown_parent_map(repo_notebook_mapping):
    doc = parse_yarrrml(repo_notebook_mapping)
    diags = validate(doc, HEADERS)
    assert [d.kind for d in diags] == ["unknown_parent_map"]
    assert diags[0].detail == "article"


def test_template_parsing_edge_cases():
    t = parse_template("$(a) $(b)", "t")
    assert t.segments == (ColumnRef("a"), ConstantText(" "), ColumnRef("b"))
    assert t.constant_prefix() == ""
    with pytest.raises(MappingSyntaxError):
        parse_template("x$()", "t")
