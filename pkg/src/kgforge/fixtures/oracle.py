"""Naive oracle over the generated CSVs.

Computes the triples each entity graph must contain and the answer every
catalog entry must return, by straight row scans and hand-rolled joins. It
shares the schema tables and value pools with the generator but none of the
mapping, materializer, store, or engine code paths.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from urllib.parse import quote

from ..vocab import DOAP, FABIO, P_PLAN, PAV, PROV, RDF, RDFS, REPR
from .corpus import (
    ARTICLE_MOCK_STEP,
    MESH_MOCK_STEP,
    WDT,
    WIKIDATA_ENTITY,
    _ML_LABELS,
)
from .schema import ENTITIES, TABLE_BY_MAP

_PREFIXES = {
    "rdfs": RDFS,
    "repr": REPR,
    "pav": PAV,
    "prov": PROV,
    "fabio": FABIO,
    "doap": DOAP,
    "p-plan": P_PLAN,
    "a": None,  # handled explicitly
}


def _expand(curie: str) -> str:
    if curie == "a":
        return RDF + "type"
    label, local = curie.split(":", 1)
    return _PREFIXES[label] + local


def _esc(text: str) -> str:
    out = text.replace("\\", "\\\\").replace('"', '\\"')
    return out.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")


def _subject(prefix: str, row_id: str) -> str:
    return f"{REPR}{prefix}{quote(row_id, safe='')}"


Row = dict[str, str]


def load_table(corpus_dir: Path, table: str) -> list[Row]:
    with open(corpus_dir / "data" / f"{table}.csv", newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


@dataclass
class OracleBundle:
    triple_lines: dict[str, list[str]] = field(default_factory=dict)
    catalog: dict[str, tuple[list[str], list[tuple]]] = field(default_factory=dict)

    @property
    def counts(self) -> dict[str, int]:
        return {entity: len(lines) for entity, lines in self.triple_lines.items()}


def expected_entity_lines(corpus_dir: Path) -> dict[str, list[str]]:
    tables = {e.table: load_table(corpus_dir, e.table) for e in ENTITIES}
    prefix_by_table = {e.table: e.subject_prefix for e in ENTITIES}

    out: dict[str, list[str]] = {}
    for schema in ENTITIES:
        lines: list[str] = []
        rows = tables[schema.table]
        for rule in schema.rules:
            kind = rule[0]
            if kind == "type":
                pred, obj = RDF + "type", _expand(rule[1])
                for row in rows:
                    s = _subject(schema.subject_prefix, row["id"])
                    lines.append(f"<{s}> <{pred}> <{obj}> .")
            elif kind in ("label", "literal"):
                pred = RDFS + "label" if kind == "label" else _expand(rule[1])
                column = rule[1] if kind == "label" else rule[2]
                for row in rows:
                    value = row[column]
                    if value == "":
                        continue
                    s = _subject(schema.subject_prefix, row["id"])
                    lines.append(f'<{s}> <{pred}> "{_esc(value)}" .')
            else:  # join
                _k, pred_curie, parent_map, child_col, parent_col = rule
                pred = _expand(pred_curie)
                parent_table = TABLE_BY_MAP.get(parent_map, parent_map)
                parent_prefix = prefix_by_table[parent_table]
                parent_index: dict[str, list[str]] = {}
                for prow in tables[parent_table]:
                    key = prow[parent_col]
                    if key != "":
                        parent_index.setdefault(key, []).append(
                            _subject(parent_prefix, prow["id"])
                        )
                for row in rows:
                    key = row[child_col]
                    if key == "":
                        continue
                    for parent_subject in parent_index.get(key, []):
                        s = _subject(schema.subject_prefix, row["id"])
                        lines.append(f"<{s}> <{pred}> <{parent_subject}> .")
        out[schema.entity] = lines
    return out


# ---------------------------------------------------------------------------
# catalog answers
# ---------------------------------------------------------------------------

def _grouped_counts(pairs, *, desc_count=True):
    """(key -> count) sorted by count desc then key asc; rows (key, str(count))."""
    counts: dict[str, int] = {}
    for key in pairs:
        counts[key] = counts.get(key, 0) + 1
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]) if desc_count else kv)
    return [(k, str(v)) for k, v in ordered]


def expected_catalog_answers(corpus_dir: Path) -> dict[str, tuple[list[str], list[tuple]]]:
    t = {e.table: load_table(corpus_dir, e.table) for e in ENTITIES}
    by_id = {
        table: {row["id"]: row for row in rows} for table, rows in t.items()
    }

    def subj(table: str, row_id: str) -> str:
        prefix = next(e.subject_prefix for e in ENTITIES if e.table == table)
        return _subject(prefix, row_id)

    answers: dict[str, tuple[list[str], list[tuple]]] = {}

    # ten_reproduced_notebooks: DISTINCT url/cells/duration of processed=51,
    # sorted by cells then duration descending, top 10
    rows = []
    for ex in t["cell_executions"]:
        if ex["processed"] != "51":
            continue
        nb = by_id["notebooks"].get(ex["notebook_id"])
        if nb is None:
            continue
        repo = by_id["repositories"].get(nb["repository_id"])
        if repo is None:
            continue
        url = repo["url"] + "/blob/master/" + quote(nb["name"], safe="")
        rows.append((url, nb["total_cells"], ex["duration"]))
    rows = list(dict.fromkeys(rows))
    rows.sort(key=lambda r: (-float(r[1]), -float(r[2])))
    answers["ten_reproduced_notebooks"] = (
        ["notebook_url", "total_cells", "duration"],
        rows[:10],
    )

    # kernel / language / outcome / error distributions
    answers["fig_notebooks_per_kernel"] = (
        ["kernel", "count"],
        _grouped_counts(nb["kernel"] for nb in t["notebooks"] if nb["kernel"]),
    )
    answers["fig_notebooks_per_language"] = (
        ["language", "count"],
        _grouped_counts(nb["language"] for nb in t["notebooks"] if nb["language"]),
    )
    answers["fig_execution_outcomes"] = (
        ["status", "count"],
        _grouped_counts(ex["processed"] for ex in t["cell_executions"]),
    )
    answers["fig_errors_by_type"] = (
        ["error", "count"],
        _grouped_counts(ex["error_type"] for ex in t["cell_executions"] if ex["error_type"]),
    )
    answers["fig_articles_per_journal"] = (
        ["journal", "count"],
        _grouped_counts(
            by_id["journals"][a["journal_id"]]["title"]
            for a in t["articles"]
            if a["journal_id"] in by_id["journals"]
        ),
    )

    # notebooks by search terms over article titles
    import re as _re

    def _imatch(text, word):
        return _re.search(word, text, _re.IGNORECASE) is not None

    hits = []
    for nb in t["notebooks"]:
        repo = by_id["repositories"].get(nb["repository_id"])
        if repo is None:
            continue
        article = by_id["articles"].get(repo["article_id"])
        if article is None:
            continue
        title = article["title"]
        if _imatch(title, "immun") and (_imatch(title, "stem") or _imatch(title, "differentiation")):
            hits.append((subj("notebooks", nb["id"]), nb["name"], title))
    hits = sorted(set(hits), key=lambda r: r[0])
    answers["notebooks_by_search_terms"] = (["notebook", "notebook_label", "title"], hits)

    # articles by keyword "open source"
    arts = sorted(
        {
            (subj("articles", a["id"]), a["title"], a["keywords"])
            for a in t["articles"]
            if "open source" in a["keywords"]
        },
        key=lambda r: r[0],
    )
    answers["articles_by_keyword"] = (["article", "title", "keywords"], arts)

    # error distributions through the article chain
    def _errors_through_articles(article_filter):
        pairs = []
        for ex in t["cell_executions"]:
            if not ex["error_type"]:
                continue
            nb = by_id["notebooks"].get(ex["notebook_id"])
            if nb is None:
                continue
            repo = by_id["repositories"].get(nb["repository_id"])
            if repo is None:
                continue
            article = by_id["articles"].get(repo["article_id"])
            if article is None or not article_filter(article):
                continue
            pairs.append(ex["error_type"])
        return _grouped_counts(pairs)

    mesh_by_id = {m["id"]: m for m in t["mesh"]}
    answers["errors_in_immunology"] = (
        ["error", "count"],
        _errors_through_articles(
            lambda a: a["mesh_id"] in mesh_by_id
            and _imatch(mesh_by_id[a["mesh_id"]]["label"], "immun")
        ),
    )
    nature_journals = {j["id"] for j in t["journals"] if j["title"] == "Nature"}
    answers["errors_in_nature"] = (
        ["error", "count"],
        _errors_through_articles(lambda a: a["journal_id"] in nature_journals),
    )

    # MeSH labels ranked by ModuleNotFoundError frequency
    pairs = []
    for ex in t["cell_executions"]:
        if ex["error_type"] != "ModuleNotFoundError":
            continue
        nb = by_id["notebooks"].get(ex["notebook_id"])
        repo = by_id["repositories"].get(nb["repository_id"]) if nb else None
        article = by_id["articles"].get(repo["article_id"]) if repo else None
        mesh = mesh_by_id.get(article["mesh_id"]) if article else None
        if mesh is not None:
            pairs.append(mesh["label"])
    answers["mesh_by_module_not_found"] = (["mesh_label", "count"], _grouped_counts(pairs))

    # repositories by stargazers count
    repo_rows = sorted(
        (
            (subj("repositories", r["id"]), r["repository"], r["stargazers_count"])
            for r in t["repositories"]
        ),
        key=lambda row: (-int(row[2]), row[0]),
    )[:20]
    answers["repositories_by_stars"] = (["repository", "label", "stars"], repo_rows)

    # federation entries: the mock holds every step-th article / mesh term
    doi_rows = []
    pmc_rows = []
    for a in t["articles"]:
        if int(a["id"]) % ARTICLE_MOCK_STEP != 1:
            continue
        item = f"{WIKIDATA_ENTITY}Q{20000 + int(a['id'])}"
        doi_rows.append((subj("articles", a["id"]), a["doi"], item))
        pmc_rows.append((subj("articles", a["id"]), a["pmc_id"], item))
    doi_rows.sort(key=lambda r: r[0])
    pmc_rows.sort(key=lambda r: r[0])
    answers["federation_doi_match"] = (["article", "doi", "item"], doi_rows)
    answers["federation_pmcid_match"] = (["article", "pmc_id", "item"], pmc_rows)

    ml_rows = []
    for idx, m in enumerate(t["mesh"]):
        if idx % MESH_MOCK_STEP != 0:
            continue
        ml_rows.append((subj("mesh", m["id"]), _ML_LABELS[idx % len(_ML_LABELS)]))
    ml_rows.sort(key=lambda r: r[0])
    answers["federation_mesh_malayalam"] = (["mesh", "label_ml"], ml_rows)

    return answers


def oracle(corpus_dir: str | Path) -> OracleBundle:
    corpus_dir = Path(corpus_dir)
    return OracleBundle(
        triple_lines=expected_entity_lines(corpus_dir),
        catalog=expected_catalog_answers(corpus_dir),
    )
