import csv
import hashlib
import re
from pathlib import Path

import pytest

from kgforge.fixtures import ENTITIES, CorpusSpec, generate, oracle
from kgforge.fixtures.schema import SCHEMA_BY_ENTITY
from kgforge.materializer import load_mapping_docs, materialize_all, read_csv_source
from kgforge.mock_endpoint import MockSparqlEndpoint
from kgforge.sparql import ServiceClient, evaluate, parse_query
from kgforge.service import load_catalog
from kgforge.store import Dataset
from kgforge.terms import Iri, Literal
from kgforge.yarrrml import validate

EMAIL_RE = re.compile(r".+@.+\..+")


def _tree_digest(root: Path) -> dict[str, str]:
    out = {}
    for path in sorted(root.rglob("*")):
        if path.is_file():
            out[str(path.relative_to(root))] = hashlib.sha256(path.read_bytes()).hexdigest()
    return out


def test_empty_corpus_all_zero_bundle(tmp_path):
    spec = CorpusSpec(seed=1, counts={k: 0 for k in CorpusSpec().counts})
    root = tmp_path / "empty"
    manifest = generate(spec, root)
    assert all(v == 0 for v in manifest["counts"].values())
    bundle = oracle(root)
    assert all(count == 0 for count in bundle.counts.values())
    assert all(rows == [] for _vars, rows in bundle.catalog.values())


def test_generation_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    generate(CorpusSpec.for_scale("s", seed=7), a)
    generate(CorpusSpec.for_scale("s", seed=7), b)
    assert _tree_digest(a) == _tree_digest(b)


def test_different_seed_differs(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    generate(CorpusSpec.for_scale("s", seed=1), a)
    generate(CorpusSpec.for_scale("s", seed=2), b)
    assert _tree_digest(a) != _tree_digest(b)


def test_reproduced_fraction_exact(corpus_s):
    rows = list(csv.DictReader(open(corpus_s.root / "data" / "cell_executions.csv")))
    assert len(rows) == 120
    assert sum(1 for r in rows if r["processed"] == "51") == 12


def test_authors_has_no_email_column(corpus_s):
    header = open(corpus_s.root / "data" / "authors.csv").readline().strip().split(",")
    assert "email" not in header
    assert {"orcid", "first_name", "last_name"} <= set(header)


def test_no_email_pattern_in_any_graph(corpus_s):
    for nt in corpus_s.out.glob("*.nt"):
        for line in nt.read_text(encoding="utf-8").splitlines():
            assert not EMAIL_RE.search(line), f"{nt.name}: {line}"


def test_referential_integrity(corpus_s):
    data = corpus_s.root / "data"
    ids = {}
    for schema in ENTITIES:
        rows = list(csv.DictReader(open(data / f"{schema.table}.csv")))
        ids[schema.table] = {r["id"] for r in rows}
    checks = [
        ("notebooks", "repository_id", "repositories"),
        ("repositories", "article_id", "articles"),
        ("articles", "journal_id", "journals"),
        ("articles", "mesh_id", "mesh"),
        ("cells", "notebook_id", "notebooks"),
        ("cell_executions", "notebook_id", "notebooks"),
        ("authors", "article_id", "articles"),
    ]
    for table, fk, parent in checks:
        for row in csv.DictReader(open(data / f"{table}.csv")):
            assert row[fk] in ids[parent], (table, fk, row[fk])


def test_mesh_hierarchy_has_top_level_terms(corpus_s):
    rows = list(csv.DictReader(open(corpus_s.root / "data" / "mesh.csv")))
    tops = {r["id"] for r in rows if r["top_level_id"] == ""}
    assert tops
    for r in rows:
        if r["top_level_id"]:
            assert r["top_level_id"] in tops


def test_22_mapping_files_parse_and_validate(corpus_s):
    docs = load_mapping_docs(corpus_s.root / "mappings")
    assert len(docs) == 22
    specs = [m for doc in docs.values() for m in doc.maps]
    headers = {}
    for spec in specs:
        src = read_csv_source(corpus_s.root / "data" / Path(spec.source.path).name)
        headers[spec.name] = src.header
    merged = docs[next(iter(docs))]
    all_maps = type(merged)(prefixes=merged.prefixes, maps=specs)
    assert validate(all_maps, headers) == []


def test_pipeline_matches_oracle_small(corpus_s):
    bundle = oracle(corpus_s.root)
    for entity, lines in bundle.triple_lines.items():
        produced = (corpus_s.out / f"{entity}.nt").read_text(encoding="utf-8").splitlines()
        assert sorted(produced) == sorted(lines), entity


def test_report_rows_cover_all_entities(corpus_s):
    names = [e.name for e in corpus_s.report.entities]
    assert names == sorted(e.entity for e in ENTITIES)
    by_name = {e.name: e for e in corpus_s.report.entities}
    bundle_counts = oracle(corpus_s.root).counts
    for entity, count in bundle_counts.items():
        assert by_name[entity].triples == count


@pytest.mark.parametrize("entry_filter", ["local"])
def test_catalog_answers_match_oracle(corpus_s, dataset_s, entry_filter):
    bundle = oracle(corpus_s.root)
    entries = [e for e in load_catalog() if e.category != "federation"]
    assert entries
    for entry in entries:
        expected_vars, expected_rows = bundle.catalog[entry.id]
        table = evaluate(dataset_s, parse_query(entry.query), timeout=30.0)
        assert table.variables == expected_vars, entry.id
        got = [_stringify(row) for row in table.rows]
        assert got == [list(r) for r in expected_rows], entry.id


def test_federation_catalog_answers_match_oracle(corpus_s, dataset_s):
    bundle = oracle(corpus_s.root)
    remote = Dataset()
    remote.load_graph("urn:wikidata", corpus_s.root / "wikidata_mock.nt")
    entries = [e for e in load_catalog() if e.category == "federation"]
    assert len(entries) == 3
    with MockSparqlEndpoint(remote) as mock:
        client = ServiceClient(
            allowlist={"https://query.wikidata.org/sparql": mock.url}
        )
        for entry in entries:
            expected_vars, expected_rows = bundle.catalog[entry.id]
            table = evaluate(
                dataset_s, parse_query(entry.query), federation=client, timeout=30.0
            )
            assert table.variables == expected_vars, entry.id
            got = [_stringify(row) for row in table.rows]
            assert got == [list(r) for r in expected_rows], entry.id


def _stringify(row):
    out = []
    for term in row:
        if term is None:
            out.append(None)
        elif isinstance(term, Iri):
            out.append(term.value)
        elif isinstance(term, Literal):
            out.append(term.lexical)
        else:
            out.append(str(term))
    return out
