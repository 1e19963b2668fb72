"""Deterministic synthetic corpus: CSVs, mapping files, and a mock remote graph.

Same spec, same bytes. Values are drawn from fixed pools with a per-table
seeded RNG so adding one table never reshuffles another. No generated value
contains an @ so nothing in any output can match an email pattern.
"""
from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from ..vocab import REPR
from .schema import ENTITIES, HEAVY_ENTITIES, PREFIX_BLOCK, mapping_text

WIKIDATA_ENTITY = "http://www.wikidata.org/entity/"
WDT = "http://www.wikidata.org/prop/direct/"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"

# every article with id % ARTICLE_MOCK_STEP == 1 has a mock Wikidata item;
# every mesh term with ordinal % MESH_MOCK_STEP == 0 has one with an @ml label
ARTICLE_MOCK_STEP = 3
MESH_MOCK_STEP = 2

SCALES: dict[str, dict[str, int]] = {
    "s": {
        "journals": 8, "articles": 30, "authors": 45, "mesh": 18,
        "repositories": 25, "notebooks": 40, "cells": 160,
        "cell_features": 80, "cell_modules": 70, "cell_names": 60,
        "cell_executions": 120, "code_analyses": 100, "markdown_features": 80,
        "notebook_asts": 80, "notebook_code_styles": 50, "notebook_features": 70,
        "notebook_markdowns": 60, "notebook_modules": 80, "notebook_names": 60,
        "repository_files": 100, "repository_releases": 35, "requirement_files": 30,
    },
    "m": {
        "journals": 40, "articles": 400, "authors": 700, "mesh": 80,
        "repositories": 350, "notebooks": 1200, "cells": 4000,
        "cell_features": 2500, "cell_modules": 2200, "cell_names": 1500,
        "cell_executions": 900, "code_analyses": 3500, "markdown_features": 2000,
        "notebook_asts": 1500, "notebook_code_styles": 600, "notebook_features": 800,
        "notebook_markdowns": 700, "notebook_modules": 900, "notebook_names": 600,
        "repository_files": 2500, "repository_releases": 400, "requirement_files": 300,
    },
}
SCALES["l"] = {k: v * 5 for k, v in SCALES["m"].items()}

_JOURNALS = [
    "Nature", "PLOS Computational Biology", "Bioinformatics", "BMC Bioinformatics",
    "GigaScience", "eLife", "Nucleic Acids Research", "Scientific Reports",
    "Genome Biology", "Cell Systems", "PeerJ", "F1000Research",
]
_TOP_MESH = ["Diseases", "Organisms", "Anatomy", "Phenomena and Processes",
             "Health Care", "Chemicals and Drugs", "Psychiatry and Psychology",
             "Information Science"]
_LEAF_MESH = [
    "Immunology", "Immune System Diseases", "Allergy and Immunology",
    "Stem Cells", "Cell Differentiation", "Genomics", "Proteomics",
    "Neoplasms", "Neurosciences", "Microbiology", "Biophysics",
    "Epidemiology", "Virology", "Metabolomics", "Pharmacology",
    "Parasitology", "Pathology", "Radiology",
]
_TITLE_TOPICS = [
    "immune response profiling", "stem cell differentiation",
    "immune stem cell differentiation", "immunological memory formation",
    "tumor microenvironment mapping", "neural development trajectories",
    "gene regulation networks", "protein folding dynamics",
    "microbiome community shifts", "single-cell expression atlases",
    "chromatin accessibility landscapes", "antibody repertoire analysis",
]
_TITLE_LEADS = ["Reproducible analysis of", "A computational study of",
                "Benchmarking workflows for", "Interactive exploration of",
                "Automated pipelines for", "Notebook-driven analysis of"]
_SUBJECTS = ["Bioinformatics", "Computational Biology", "Systems Biology",
             "Genetics", "Cell Biology"]
_KEYWORDS = ["reproducibility", "jupyter", "python", "open source",
             "bioinformatics", "workflow", "single cell", "genomics",
             "visualization", "machine learning"]
_ARTICLE_LICENSES = ["CC-BY-4.0", "CC-BY-NC-4.0", "CC0-1.0", ""]
_REPO_LICENSES = ["MIT", "Apache-2.0", "GPL-3.0", "BSD-3-Clause", ""]
_FIRST_NAMES = ["Ada", "Grace", "Alan", "Edsger", "Barbara", "Donald", "Radia",
                "Leslie", "Tim", "Margaret", "Guido", "Katherine"]
_LAST_NAMES = ["Lovelace", "Hopper", "Turing", "Dijkstra", "Liskov", "Knuth",
               "Perlman", "Lamport", "Berners-Lee", "Hamilton", "Rossum", "Johnson"]
_USERS = ["nb-lab", "bio-comp", "datasci", "genomics-io", "cellworks", "repro-team",
          "omics-hub", "plotwise"]
_PROJECTS = ["immuno-atlas", "stemflow", "seq-tools", "cell-profiler", "viz-kit",
             "pipeline-demo", "scrna-bench", "notebook-suite"]
_NOTEBOOK_STEMS = ["analysis", "data preprocessing", "model training", "Figure 2",
                   "exploratory plots", "sequence alignment", "stats summary",
                   "parameter sweep", "quality control", "final report"]
_KERNELS = ["python3", "python3", "python3", "python2", "ir", "julia-1.6", ""]
_LANGUAGES = ["python", "python", "python", "python", "R", "julia", ""]
_CELL_TYPES = ["code", "code", "code", "markdown", "raw"]
_ERROR_TYPES = ["ModuleNotFoundError", "ImportError", "FileNotFoundError",
                "AttributeError", "ValueError", "TypeError", "KeyError",
                "NameError", "SyntaxError"]
_FEATURES = ["loop", "function_def", "import", "plot", "widget", "magic"]
_MODULES = ["numpy", "pandas", "matplotlib", "torch", "sklearn", "scipy",
            "seaborn", "biopython", "statsmodels", "plotly"]
_METRICS = ["cyclomatic_complexity", "line_count", "comment_ratio",
            "function_count", "max_nesting"]
_MD_ELEMENTS = ["header", "link", "image", "code_span", "table", "list"]
_AST_NODES = ["FunctionDef", "Import", "Call", "Assign", "For", "If", "With"]
_STYLE_CODES = [("E501", "line too long"), ("W291", "trailing whitespace"),
                ("E302", "expected 2 blank lines"), ("F401", "imported but unused"),
                ("E225", "missing whitespace around operator")]
_IDENTIFIERS = ["df", "fig", "model", "result", "counts", "matrix", "genes",
                "scores", "labels", "params"]
_FILE_DIRS = ["src", "notebooks", "data", "scripts", "figures"]
_FILE_EXTS = ["py", "ipynb", "csv", "md", "txt", "json"]
_REQ_NAMES = ["requirements.txt", "setup.py", "Pipfile", "environment.yml"]
_IMPORT_TYPES = ["external", "local", "standard"]
_ML_LABELS = [
    "പ്രതിരോധശാസ്ത്രം",
    "കോശം",
    "ജനിതകം",
    "രോഗം",
    "ശാസ്ത്രം",
    "വൈദ്യം",
    "സൂക്ഷ്മജീവി",
    "മസ്തിഷ്കം",
]


@dataclass
class CorpusSpec:
    seed: int = 1
    counts: dict[str, int] = field(default_factory=lambda: dict(SCALES["s"]))
    reproduced_fraction: float = 0.1
    scale: str = "s"

    @classmethod
    def for_scale(cls, scale: str, seed: int = 1) -> "CorpusSpec":
        if scale not in SCALES:
            raise ValueError(f"unknown scale {scale!r}, pick one of {sorted(SCALES)}")
        return cls(seed=seed, counts=dict(SCALES[scale]), scale=scale)


def _rng(spec: CorpusSpec, table: str) -> random.Random:
    return random.Random(f"{spec.seed}:{table}")


def _date(rng: random.Random, year_lo=2015, year_hi=2023) -> str:
    return f"{rng.randint(year_lo, year_hi):04d}-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}"


def _fk(rng: random.Random, parent_count: int) -> str:
    """Foreign key into 1..parent_count; empty when there is no parent at all."""
    return str(rng.randint(1, parent_count)) if parent_count > 0 else ""


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def generate(spec: CorpusSpec, out_dir: str | Path) -> dict:
    """Write data/*.csv, mappings/*.yml, wikidata_mock.nt, and corpus.json."""
    out_dir = Path(out_dir)
    data_dir = out_dir / "data"
    mapping_dir = out_dir / "mappings"
    data_dir.mkdir(parents=True, exist_ok=True)
    mapping_dir.mkdir(parents=True, exist_ok=True)

    c = spec.counts
    tables: dict[str, list[list[str]]] = {}

    rng = _rng(spec, "journals")
    tables["journals"] = [
        [str(i), f"{rng.randint(1000, 9999)}-{rng.randint(1000, 9999)}",
         _JOURNALS[(i - 1) % len(_JOURNALS)]]
        for i in range(1, c["journals"] + 1)
    ]

    rng = _rng(spec, "mesh")
    n_top = max(1, min(len(_TOP_MESH), c["mesh"] // 5))
    mesh_rows = []
    for i in range(1, c["mesh"] + 1):
        mesh_id = f"D{i:06d}"
        if i <= n_top:
            mesh_rows.append([mesh_id, _TOP_MESH[(i - 1) % len(_TOP_MESH)], ""])
        else:
            label = _LEAF_MESH[(i - n_top - 1) % len(_LEAF_MESH)]
            top = f"D{rng.randint(1, n_top):06d}" if n_top > 0 else ""
            mesh_rows.append([mesh_id, label, top])
    tables["mesh"] = mesh_rows

    rng = _rng(spec, "articles")
    article_rows = []
    for i in range(1, c["articles"] + 1):
        title = f"{rng.choice(_TITLE_LEADS)} {rng.choice(_TITLE_TOPICS)}"
        keywords = "; ".join(rng.sample(_KEYWORDS, rng.randint(2, 4)))
        year = rng.randint(2016, 2023)
        submitted = _date(rng, year - 1, year - 1)
        accepted = _date(rng, year, year)
        published = _date(rng, year, year)
        article_rows.append([
            str(i),
            f"PMC{rng.randint(1_000_000, 9_999_999)}",
            str(rng.randint(20_000_000, 38_000_000)),
            f"10.{rng.randint(1000, 9999)}/jnb.{i}",
            title,
            rng.choice(_SUBJECTS),
            submitted,
            accepted,
            published,
            rng.choice(_ARTICLE_LICENSES),
            f"(c) {year} The Authors",
            keywords,
            _fk(rng, c["journals"]),
            f"D{rng.randint(n_top + 1, c['mesh']):06d}" if c["mesh"] > n_top else "",
        ])
    tables["articles"] = article_rows

    rng = _rng(spec, "authors")
    author_rows = []
    for i in range(1, c["authors"] + 1):
        first = rng.choice(_FIRST_NAMES)
        last = rng.choice(_LAST_NAMES)
        author_rows.append([
            str(i),
            f"0000-000{rng.randint(1, 3)}-{rng.randint(0, 9999):04d}-{rng.randint(0, 9999):04d}",
            first,
            last,
            f"{first} {last}",
            _fk(rng, c["articles"]),
        ])
    tables["authors"] = author_rows

    rng = _rng(spec, "repositories")
    repo_rows = []
    for i in range(1, c["repositories"] + 1):
        name = f"{rng.choice(_USERS)}/{rng.choice(_PROJECTS)}-{i}"
        created = _date(rng, 2016, 2021)
        repo_rows.append([
            str(i),
            name,
            f"https://github.com/{name}",
            _fk(rng, c["articles"]),
            created,
            _date(rng, 2021, 2023),
            _date(rng, 2021, 2023),
            str(rng.randint(0, 4500)),
            str(rng.randint(0, 80)),
            rng.choice(_REPO_LICENSES),
        ])
    tables["repositories"] = repo_rows

    rng = _rng(spec, "notebooks")
    notebook_rows = []
    for i in range(1, c["notebooks"] + 1):
        stem = rng.choice(_NOTEBOOK_STEMS)
        notebook_rows.append([
            str(i),
            _fk(rng, c["repositories"]),
            f"{stem} {i}.ipynb",
            rng.choice(["4", "4.4", "4.5"]),
            rng.choice(_KERNELS),
            rng.choice(_LANGUAGES),
            str(rng.randint(1, 80)),
            str(rng.randint(1, 120)),
        ])
    tables["notebooks"] = notebook_rows

    rng = _rng(spec, "cells")
    tables["cells"] = [
        [str(i), _fk(rng, c["notebooks"]), str(rng.randint(0, 60)),
         rng.choice(_CELL_TYPES), str(rng.randint(0, 90)), str(rng.randint(1, 40))]
        for i in range(1, c["cells"] + 1)
    ]

    rng = _rng(spec, "cell_executions")
    n_exec = c["cell_executions"]
    n_reproduced = round(spec.reproduced_fraction * n_exec)
    reproduced = set(rng.sample(range(1, n_exec + 1), n_reproduced))
    seen_durations: set[str] = set()
    exec_rows = []
    for i in range(1, n_exec + 1):
        while True:
            duration = f"{rng.uniform(0.5, 900.0):.3f}"
            if duration not in seen_durations:
                seen_durations.add(duration)
                break
        if i in reproduced:
            processed, error = "51", ""
        else:
            processed = str(rng.choice([1, 2, 3, 4, 5, 10, 20]))
            error = rng.choice(_ERROR_TYPES)
        exec_rows.append([
            str(i), _fk(rng, c["notebooks"]), duration,
            processed, error, _date(rng, 2023, 2023),
        ])
    tables["cell_executions"] = exec_rows

    def link_table(table: str, parent_count: int, value_fn) -> None:
        gen = _rng(spec, table)
        tables[table] = [
            [str(i), _fk(gen, parent_count), *value_fn(gen)]
            for i in range(1, c[table] + 1)
        ]

    link_table("cell_features", c["cells"],
               lambda g: [g.choice(_FEATURES), str(g.randint(1, 30))])
    link_table("cell_modules", c["cells"], lambda g: [g.choice(_MODULES)])
    link_table("cell_names", c["cells"], lambda g: [g.choice(_IDENTIFIERS)])
    link_table("code_analyses", c["cells"],
               lambda g: [g.choice(_METRICS), str(g.randint(0, 50))])
    link_table("markdown_features", c["cells"],
               lambda g: [g.choice(_MD_ELEMENTS), str(g.randint(1, 12))])
    link_table("notebook_asts", c["notebooks"],
               lambda g: [g.choice(_AST_NODES), str(g.randint(1, 60))])
    link_table("notebook_code_styles", c["notebooks"],
               lambda g: [*g.choice(_STYLE_CODES), str(g.randint(1, 25))])
    link_table("notebook_features", c["notebooks"],
               lambda g: [g.choice(_FEATURES), str(g.randint(1, 30))])
    link_table("notebook_markdowns", c["notebooks"],
               lambda g: [g.choice(_MD_ELEMENTS), str(g.randint(1, 12))])
    link_table("notebook_modules", c["notebooks"],
               lambda g: [g.choice(_MODULES), g.choice(_IMPORT_TYPES)])
    link_table("notebook_names", c["notebooks"], lambda g: [g.choice(_IDENTIFIERS)])
    link_table("repository_files", c["repositories"],
               lambda g: (lambda ext: [f"{g.choice(_FILE_DIRS)}/file_{g.randint(1, 999)}.{ext}", ext])(
                   g.choice(_FILE_EXTS)))
    link_table("repository_releases", c["repositories"],
               lambda g: [f"v{g.randint(0, 4)}.{g.randint(0, 9)}.{g.randint(0, 9)}",
                          _date(g, 2018, 2023)])
    link_table("requirement_files", c["repositories"],
               lambda g: [g.choice(_REQ_NAMES), str(g.randint(1, 40))])

    for schema in ENTITIES:
        rows = tables[schema.table]
        assert all(len(r) == len(schema.columns) for r in rows), schema.table
        _write_csv(data_dir / f"{schema.table}.csv", list(schema.columns), rows)
        (mapping_dir / f"{schema.entity}.yml").write_text(mapping_text(schema), encoding="utf-8")

    _write_wikidata_mock(out_dir, tables["articles"], tables["mesh"])

    manifest = {
        "seed": spec.seed,
        "scale": spec.scale,
        "reproduced_fraction": spec.reproduced_fraction,
        "reproduced_count": n_reproduced,
        "counts": {schema.entity: len(tables[schema.table]) for schema in ENTITIES},
        "schema": {schema.entity: list(schema.columns) for schema in ENTITIES},
        # policy, not a live column: the exported author table carries no email
        "suppressed_columns": [["authors.csv", "email"]],
        "heavy_entities": HEAVY_ENTITIES,
        "namespace": REPR,
        "article_mock_step": ARTICLE_MOCK_STEP,
        "mesh_mock_step": MESH_MOCK_STEP,
        "prefixes": {
            line.split(":", 1)[0].strip(): line.split(":", 1)[1].strip()
            for line in PREFIX_BLOCK.splitlines()[1:]
            if line.strip()
        },
    }
    (out_dir / "corpus.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return manifest


def _write_wikidata_mock(out_dir: Path, article_rows, mesh_rows) -> None:
    """Wikidata-shaped triples overlapping the corpus on DOI, PMC id, MeSH id."""
    lines = []
    for row in article_rows:
        art_id = int(row[0])
        if art_id % ARTICLE_MOCK_STEP != 1:
            continue
        item = f"{WIKIDATA_ENTITY}Q{20000 + art_id}"
        doi, pmc = row[3], row[1]
        lines.append(f'<{item}> <{WDT}P356> "{doi}" .')
        lines.append(f'<{item}> <{WDT}P932> "{pmc}" .')
    for idx, row in enumerate(mesh_rows):
        if idx % MESH_MOCK_STEP != 0:
            continue
        mesh_id = row[0]
        item = f"{WIKIDATA_ENTITY}Q{40000 + idx}"
        label = _ML_LABELS[idx % len(_ML_LABELS)]
        lines.append(f'<{item}> <{WDT}P486> "{mesh_id}" .')
        lines.append(f'<{item}> <{RDFS_LABEL}> "{label}"@ml .')
    (out_dir / "wikidata_mock.nt").write_text("\n".join(lines) + "\n", encoding="utf-8")
