"""Shared test fixtures: canonical mapping texts, the conformance query, and
a session-scoped generated+materialized corpus."""
from pathlib import Path
from types import SimpleNamespace

import pytest

QUERIES_DIR = Path(__file__).resolve().parents[1] / "src/kgforge/service/queries"


@pytest.fixture(scope="session")
def corpus_s(tmp_path_factory):
    """Small corpus, generated and materialized once per test session."""
    from kgforge.fixtures import CorpusSpec, generate
    from kgforge.materializer import load_mapping_docs, materialize_all

    root = tmp_path_factory.mktemp("corpus_s")
    manifest = generate(CorpusSpec.for_scale("s", seed=1), root)
    docs = load_mapping_docs(root / "mappings")
    report = materialize_all(docs, root / "data", root / "out", jobs=2)
    return SimpleNamespace(
        root=root, manifest=manifest, report=report, out=root / "out"
    )


@pytest.fixture(scope="session")
def dataset_s(corpus_s):
    """The small corpus loaded into a store (heavy graphs excluded)."""
    from kgforge.fixtures import HEAVY_ENTITIES
    from kgforge.store import Dataset

    ds = Dataset()
    ds.load_manifest(corpus_s.out / "manifest.csv", exclude_entities=HEAVY_ENTITIES)
    ds.prepare()
    return ds


def conformance_query_text() -> str:
    """The ten-reproduced-notebooks catalog query with its header stripped."""
    raw = (QUERIES_DIR / "ten_reproduced_notebooks.rq").read_text()
    return "".join(
        line for line in raw.splitlines(keepends=True) if not line.startswith("#+")
    )


@pytest.fixture
def conformance_query() -> str:
    return conformance_query_text()

PREFIX_BLOCK = """\
prefixes:
  rdfs: http://www.w3.org/2000/01/rdf-schema#
  repr: https://w3id.org/reproduceme/
  pav: http://purl.org/pav/
  doap: http://usefulinc.com/ns/doap#
  fabio: http://purl.org/spar/fabio/
"""

REPO_NOTEBOOK_MAPPING = PREFIX_BLOCK + """\
mappings:
  repositories:
    sources:
      - [data/repositories.csv~csv]
    s: https://w3id.org/reproduceme/repository_$(id)
    po:
      - [a, doap:GitRepository]
      - [rdfs:label,$(repository)]
      - p: pav:retrievedFrom
        o:
          - mapping: article
            condition:
              function: equal
              parameters:
                - [str1, $(article_id), s]
                - [str2, $(id), o]
  notebooks:
    sources:
      - [data/notebooks.csv~csv]
    s: https://w3id.org/reproduceme/notebook_$(id)
    po:
      - [a, repr:Notebook]
      - [rdfs:label, $(name)]
      - [repr:kernel, $(kernel)]
      - [repr:language, $(language)]
      - p: pav:retrievedFrom
        o:
          - mapping: repositories
            condition:
              function: equal
              parameters:
                - [str1, $(repository_id), s]
                - [str2, $(id), o]
"""

ARTICLE_MAPPING = PREFIX_BLOCK + """\
mappings:
  article:
    sources:
      - [data/articles.csv~csv]
    s: https://w3id.org/reproduceme/article_$(id)
    po:
      - [a, fabio:Article]
      - [rdfs:label, $(title)]
"""


@pytest.fixture
def repo_notebook_mapping() -> str:
    return REPO_NOTEBOOK_MAPPING


@pytest.fixture
def article_mapping() -> str:
    return ARTICLE_MAPPING
