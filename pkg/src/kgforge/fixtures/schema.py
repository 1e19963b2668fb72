"""Entity schema shared by the corpus generator, mapping writer, and oracle.

One record per entity graph: CSV table name, subject IRI prefix (under the
shared namespace), the column layout, and the mapping rules. The four
entities marked heavy are skipped by default at load time.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..vocab import REPR

# rule kinds: ("type", class_curie) | ("label", column) | ("literal", predicate_curie, column)
#           | ("join", predicate_curie, parent_table, child_column, parent_column)


@dataclass(frozen=True)
class EntitySchema:
    entity: str          # Report/graph name, e.g. "CellExecution"
    table: str           # CSV file stem and YARRRML map key
    subject_prefix: str  # local IRI prefix, e.g. "execution_"
    columns: tuple[str, ...]
    rules: tuple[tuple, ...]
    heavy: bool = False


ENTITIES: list[EntitySchema] = [
    EntitySchema(
        "Article", "articles", "article_",
        ("id", "pmc_id", "pubmed_id", "doi", "title", "subject", "submitted_date",
         "accepted_date", "published_date", "license", "copyright", "keywords",
         "journal_id", "mesh_id"),
        (
            ("type", "fabio:Article"),
            ("label", "title"),
            ("literal", "repr:pmc_id", "pmc_id"),
            ("literal", "repr:pubmed_id", "pubmed_id"),
            ("literal", "repr:doi", "doi"),
            ("literal", "repr:subject", "subject"),
            ("literal", "repr:submitted_date", "submitted_date"),
            ("literal", "repr:accepted_date", "accepted_date"),
            ("literal", "repr:published_date", "published_date"),
            ("literal", "repr:license", "license"),
            ("literal", "repr:copyright", "copyright"),
            ("literal", "repr:keywords", "keywords"),
            ("join", "repr:journal", "journal", "journal_id", "id"),
            ("join", "prov:specializationOf", "mesh", "mesh_id", "id"),
        ),
    ),
    EntitySchema(
        "Author", "authors", "author_",
        ("id", "orcid", "first_name", "last_name", "full_name", "article_id"),
        (
            ("type", "repr:Author"),
            ("label", "full_name"),
            ("literal", "repr:orcid", "orcid"),
            ("literal", "repr:first_name", "first_name"),
            ("literal", "repr:last_name", "last_name"),
            ("join", "repr:author_of", "article", "article_id", "id"),
        ),
    ),
    EntitySchema(
        "Cell", "cells", "cell_",
        ("id", "notebook_id", "cell_index", "cell_type", "execution_count", "lines_of_code"),
        (
            ("type", "repr:Cell"),
            ("literal", "repr:cell_index", "cell_index"),
            ("literal", "repr:cell_type", "cell_type"),
            ("literal", "repr:execution_count", "execution_count"),
            ("literal", "repr:lines_of_code", "lines_of_code"),
            ("join", "p-plan:isStepOfPlan", "notebooks", "notebook_id", "id"),
        ),
    ),
    EntitySchema(
        "CellFeature", "cell_features", "cell_feature_",
        ("id", "cell_id", "feature", "value"),
        (
            ("type", "repr:CellFeature"),
            ("label", "feature"),
            ("literal", "repr:value", "value"),
            ("join", "p-plan:isVariableOfPlan", "cells", "cell_id", "id"),
        ),
    ),
    EntitySchema(
        "CellModule", "cell_modules", "cell_module_",
        ("id", "cell_id", "module"),
        (
            ("type", "repr:CellModule"),
            ("label", "module"),
            ("join", "p-plan:isVariableOfPlan", "cells", "cell_id", "id"),
        ),
    ),
    EntitySchema(
        "CellName", "cell_names", "cell_name_",
        ("id", "cell_id", "name"),
        (
            ("type", "repr:CellName"),
            ("label", "name"),
            ("join", "p-plan:isVariableOfPlan", "cells", "cell_id", "id"),
        ),
        heavy=True,
    ),
    EntitySchema(
        "CellExecution", "cell_executions", "execution_",
        ("id", "notebook_id", "duration", "processed", "error_type", "executed_date"),
        (
            ("type", "repr:CellExecution"),
            ("literal", "repr:duration", "duration"),
            ("literal", "repr:processed", "processed"),
            ("literal", "repr:error_type", "error_type"),
            ("literal", "repr:executed_date", "executed_date"),
            ("join", "p-plan:isStepOfPlan", "notebooks", "notebook_id", "id"),
        ),
    ),
    EntitySchema(
        "CodeAnalysis", "code_analyses", "code_analysis_",
        ("id", "cell_id", "metric", "value"),
        (
            ("type", "repr:CodeAnalysis"),
            ("literal", "repr:metric", "metric"),
            ("literal", "repr:value", "value"),
            ("join", "p-plan:isVariableOfPlan", "cells", "cell_id", "id"),
        ),
        heavy=True,
    ),
    EntitySchema(
        "Journal", "journals", "journal_",
        ("id", "issn", "title"),
        (
            ("type", "fabio:Journal"),
            ("label", "title"),
            ("literal", "repr:issn", "issn"),
        ),
    ),
    EntitySchema(
        "MarkdownFeature", "markdown_features", "markdown_feature_",
        ("id", "cell_id", "element", "count"),
        (
            ("type", "repr:MarkdownFeature"),
            ("label", "element"),
            ("literal", "repr:count", "count"),
            ("join", "p-plan:isVariableOfPlan", "cells", "cell_id", "id"),
        ),
        heavy=True,
    ),
    EntitySchema(
        "MESH", "mesh", "mesh_",
        ("id", "label", "top_level_id"),
        (
            ("type", "repr:MeSHTerm"),
            ("label", "label"),
            ("literal", "repr:mesh_id", "id"),
            ("join", "prov:generalizationOf", "mesh", "top_level_id", "id"),
        ),
    ),
    EntitySchema(
        "Notebook", "notebooks", "notebook_",
        ("id", "repository_id", "name", "nbformat", "kernel", "language",
         "total_cells", "max_execution_count"),
        (
            ("type", "repr:Notebook"),
            ("label", "name"),
            ("literal", "repr:kernel", "kernel"),
            ("literal", "repr:language", "language"),
            ("literal", "repr:nbformat", "nbformat"),
            ("literal", "repr:total_cells", "total_cells"),
            ("literal", "repr:max_execution_count", "max_execution_count"),
            ("join", "pav:retrievedFrom", "repositories", "repository_id", "id"),
        ),
    ),
    EntitySchema(
        "NotebookAST", "notebook_asts", "notebook_ast_",
        ("id", "notebook_id", "node_type", "count"),
        (
            ("type", "repr:NotebookAST"),
            ("literal", "repr:node_type", "node_type"),
            ("literal", "repr:count", "count"),
            ("join", "p-plan:isVariableOfPlan", "notebooks", "notebook_id", "id"),
        ),
    ),
    EntitySchema(
        "NotebookCodeStyle", "notebook_code_styles", "notebook_code_style_",
        ("id", "notebook_id", "error_code", "description", "count"),
        (
            ("type", "repr:NotebookCodeStyle"),
            ("label", "description"),
            ("literal", "repr:error_code", "error_code"),
            ("literal", "repr:count", "count"),
            ("join", "p-plan:isVariableOfPlan", "notebooks", "notebook_id", "id"),
        ),
    ),
    EntitySchema(
        "NotebookFeature", "notebook_features", "notebook_feature_",
        ("id", "notebook_id", "feature", "value"),
        (
            ("type", "repr:NotebookFeature"),
            ("label", "feature"),
            ("literal", "repr:value", "value"),
            ("join", "p-plan:isVariableOfPlan", "notebooks", "notebook_id", "id"),
        ),
    ),
    EntitySchema(
        "NotebookMarkdown", "notebook_markdowns", "notebook_markdown_",
        ("id", "notebook_id", "element", "count"),
        (
            ("type", "repr:NotebookMarkdown"),
            ("label", "element"),
            ("literal", "repr:count", "count"),
            ("join", "p-plan:isVariableOfPlan", "notebooks", "notebook_id", "id"),
        ),
    ),
    EntitySchema(
        "NotebookModule", "notebook_modules", "notebook_module_",
        ("id", "notebook_id", "module", "import_type"),
        (
            ("type", "repr:NotebookModule"),
            ("label", "module"),
            ("literal", "repr:import_type", "import_type"),
            ("join", "p-plan:isVariableOfPlan", "notebooks", "notebook_id", "id"),
        ),
    ),
    EntitySchema(
        "NotebookName", "notebook_names", "notebook_name_",
        ("id", "notebook_id", "token"),
        (
            ("type", "repr:NotebookName"),
            ("label", "token"),
            ("join", "p-plan:isVariableOfPlan", "notebooks", "notebook_id", "id"),
        ),
    ),
    EntitySchema(
        "Repository", "repositories", "repository_",
        ("id", "repository", "url", "article_id", "created_date", "updated_date",
         "pushed_date", "stargazers_count", "issues_count", "license"),
        (
            ("type", "doap:GitRepository"),
            ("label", "repository"),
            ("literal", "repr:url", "url"),
            ("literal", "repr:created_date", "created_date"),
            ("literal", "repr:updated_date", "updated_date"),
            ("literal", "repr:pushed_date", "pushed_date"),
            ("literal", "repr:stargazers_count", "stargazers_count"),
            ("literal", "repr:issues_count", "issues_count"),
            ("literal", "repr:license", "license"),
            ("join", "pav:retrievedFrom", "article", "article_id", "id"),
        ),
    ),
    EntitySchema(
        "RepositoryFile", "repository_files", "repository_file_",
        ("id", "repository_id", "path", "extension"),
        (
            ("type", "repr:File"),
            ("label", "path"),
            ("literal", "repr:extension", "extension"),
            ("join", "pav:retrievedFrom", "repositories", "repository_id", "id"),
        ),
        heavy=True,
    ),
    EntitySchema(
        "RepositoryRelease", "repository_releases", "repository_release_",
        ("id", "repository_id", "tag", "release_date"),
        (
            ("type", "repr:RepositoryRelease"),
            ("label", "tag"),
            ("literal", "repr:release_date", "release_date"),
            ("join", "pav:retrievedFrom", "repositories", "repository_id", "id"),
        ),
    ),
    EntitySchema(
        "RequirementFile", "requirement_files", "requirement_file_",
        ("id", "repository_id", "name", "dependency_count"),
        (
            ("type", "repr:File"),
            ("label", "name"),
            ("literal", "repr:dependency_count", "dependency_count"),
            ("join", "pav:retrievedFrom", "repositories", "repository_id", "id"),
        ),
    ),
]

HEAVY_ENTITIES = [e.entity for e in ENTITIES if e.heavy]

# YARRRML map key per table: singular names for the maps other files join
# against by name, table names for the rest.
MAP_NAMES = {e.table: e.table for e in ENTITIES}
MAP_NAMES["articles"] = "article"
MAP_NAMES["journals"] = "journal"

# reverse lookup used by the oracle: join rules name the parent map
TABLE_BY_MAP = {map_name: table for table, map_name in MAP_NAMES.items()}
SCHEMA_BY_TABLE = {e.table: e for e in ENTITIES}
SCHEMA_BY_ENTITY = {e.entity: e for e in ENTITIES}

PREFIX_BLOCK = """\
prefixes:
  rdfs: http://www.w3.org/2000/01/rdf-schema#
  xsd: http://www.w3.org/2001/XMLSchema#
  repr: https://w3id.org/reproduceme/
  p-plan: http://purl.org/net/p-plan
  pav: http://purl.org/pav/
  prov: http://www.w3.org/ns/prov#
  fabio: http://purl.org/spar/fabio/
  doap: http://usefulinc.com/ns/doap#
"""


def mapping_text(schema: EntitySchema) -> str:
    """Render one entity's YARRRML mapping document."""
    map_name = MAP_NAMES[schema.table]
    lines = [PREFIX_BLOCK, "mappings:", f"  {map_name}:", "    sources:",
             f"      - [data/{schema.table}.csv~csv]",
             f"    s: {REPR}{schema.subject_prefix}$(id)", "    po:"]
    for rule in schema.rules:
        kind = rule[0]
        if kind == "type":
            lines.append(f"      - [a, {rule[1]}]")
        elif kind == "label":
            lines.append(f"      - [rdfs:label, $({rule[1]})]")
        elif kind == "literal":
            lines.append(f"      - [{rule[1]}, $({rule[2]})]")
        elif kind == "join":
            _kind, predicate, parent_table, child_col, parent_col = rule
            parent_map = MAP_NAMES.get(parent_table, parent_table)
            lines += [
                f"      - p: {predicate}",
                "        o:",
                f"          - mapping: {parent_map}",
                "            condition:",
                "              function: equal",
                "              parameters:",
                f"                - [str1, $({child_col}), s]",
                f"                - [str2, $({parent_col}), o]",
            ]
        else:  # pragma: no cover
            raise ValueError(f"unknown rule kind {kind}")
    return "\n".join(lines) + "\n"
