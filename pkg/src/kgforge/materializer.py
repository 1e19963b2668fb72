"""Execute mapping documents over CSV sources and write per-entity N-Triples.

Rules are grouped into partitions keyed by (subject template prefix, constant
predicate, target graph). Partitions with distinct keys cannot emit the same
triple, so deduplication happens inside each partition only and partitions
are safe to run concurrently; the merged output is identical at every
parallelism level.
"""
from __future__ import annotations

import csv
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping
from urllib.parse import quote

from .terms import Iri, Literal, Triple
from .yarrrml import (
    ColumnRef,
    ConstantTerm,
    JoinRef,
    MappingDocument,
    PredicateObjectSpec,
    TemplateExpr,
    TriplesMapSpec,
    validate,
)
from .ntriples import format_triple

GRAPH_BASE = "https://w3id.org/reproduceme/graph/"


class MaterializationError(Exception):
    pass


class SourceNotFound(MaterializationError):
    pass


class SuppressedColumn(MaterializationError):
    pass


# ---------------------------------------------------------------------------
# Sources
# ---------------------------------------------------------------------------

@dataclass
class RowSource:
    header: list[str]
    rows: list[list[str]]
    origin: str


def read_csv_source(path: str | Path) -> RowSource:
    path = Path(path)
    if not path.is_file():
        raise SourceNotFound(str(path))
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MaterializationError(f"{path}: empty CSV, no header row")
        rows = list(reader)
    width = len(header)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise MaterializationError(
                f"{path}: row {i + 2} has {len(row)} fields, header has {width}"
            )
    return RowSource(header=header, rows=rows, origin=str(path))


def resolve_source(data_dir: str | Path, source_path: str) -> Path:
    """Mapping files may carry paths like data/articles.csv; fall back to the basename."""
    data_dir = Path(data_dir)
    direct = data_dir / source_path
    if direct.is_file():
        return direct
    fallback = data_dir / Path(source_path).name
    if fallback.is_file():
        return fallback
    raise SourceNotFound(f"{source_path} (looked in {data_dir})")


# ---------------------------------------------------------------------------
# Template expansion
# ---------------------------------------------------------------------------

# RFC 3986 unreserved set; quote() never touches letters, digits, _.-~
_SAFE = ""


def expand_template(template: TemplateExpr, row: Mapping[str, str]) -> Iri | None:
    """Fill a template from a row; any empty referenced value yields None.

    Substituted values are percent-encoded so the result is IRI-safe;
    constant segments pass through verbatim.
    """
    parts: list[str] = []
    for seg in template.segments:
        if isinstance(seg, ColumnRef):
            value = row[seg.column]
            if value == "":
                return None
            parts.append(quote(value, safe=_SAFE))
        else:
            parts.append(seg.text)
    return Iri("".join(parts))


def _compile_template(template: TemplateExpr, header: list[str]):
    """Row-list fast path used by the inner loops."""
    index = {c: i for i, c in enumerate(header)}
    steps: list[tuple[bool, object]] = []
    for seg in template.segments:
        if isinstance(seg, ColumnRef):
            steps.append((True, index[seg.column]))
        else:
            steps.append((False, seg.text))

    def expand(row: list[str]) -> str | None:
        parts = []
        for is_ref, payload in steps:
            if is_ref:
                value = row[payload]
                if value == "":
                    return None
                parts.append(quote(value, safe=_SAFE))
            else:
                parts.append(payload)
        return "".join(parts)

    return expand


# ---------------------------------------------------------------------------
# Parent indexes for joins
# ---------------------------------------------------------------------------

# (parent group name, parent column) -> join value -> subject IRIs in row order
ParentIndex = dict[tuple[str, str], dict[str, list[Iri]]]


def build_parent_indexes(
    specs: Iterable[TriplesMapSpec], sources: dict[str, RowSource]
) -> ParentIndex:
    specs = list(specs)
    by_group: dict[str, list[TriplesMapSpec]] = {}
    for spec in specs:
        by_group.setdefault(spec.group_name(), []).append(spec)

    needed: set[tuple[str, str]] = set()
    for spec in specs:
        for po in spec.pos:
            if isinstance(po.object, JoinRef):
                needed.add((po.object.parent_map, po.object.parent_column))

    index: ParentIndex = {}
    for group, column in sorted(needed):
        bucket: dict[str, list[Iri]] = {}
        for parent in by_group.get(group, []):
            source = sources[parent.name]
            col = source.header.index(column)
            expand = _compile_template(parent.subject, source.header)
            for row in source.rows:
                key = row[col]
                if key == "":
                    continue
                subject = expand(row)
                if subject is None:
                    continue
                bucket.setdefault(key, []).append(Iri(subject))
        index[(group, column)] = bucket
    return index


# ---------------------------------------------------------------------------
# Per-map and per-unit materialization
# ---------------------------------------------------------------------------

def _emit_unit(
    spec: TriplesMapSpec,
    po: PredicateObjectSpec,
    source: RowSource,
    parent_index: ParentIndex,
    sink: dict[Triple, None],
) -> None:
    """Emit all triples of one (map, predicate-object) unit into sink (dedups)."""
    expand_subject = _compile_template(spec.subject, source.header)
    predicate = po.predicate
    obj = po.object
    if isinstance(obj, ConstantTerm):
        for row in source.rows:
            s = expand_subject(row)
            if s is None:
                continue
            sink[Triple(Iri(s), predicate, obj.term)] = None
    elif isinstance(obj, ColumnRef):
        col = source.header.index(obj.column)
        datatype, language = po.datatype, po.language
        for row in source.rows:
            value = row[col]
            if value == "":
                continue
            s = expand_subject(row)
            if s is None:
                continue
            sink[Triple(Iri(s), predicate, Literal(value, datatype, language))] = None
    elif isinstance(obj, TemplateExpr):
        expand_object = _compile_template(obj, source.header)
        for row in source.rows:
            o = expand_object(row)
            if o is None:
                continue
            s = expand_subject(row)
            if s is None:
                continue
            sink[Triple(Iri(s), predicate, Iri(o))] = None
    elif isinstance(obj, JoinRef):
        col = source.header.index(obj.child_column)
        bucket = parent_index.get((obj.parent_map, obj.parent_column), {})
        for row in source.rows:
            key = row[col]
            if key == "":
                continue
            parents = bucket.get(key)
            if not parents:
                continue
            s = expand_subject(row)
            if s is None:
                continue
            subject = Iri(s)
            for parent_subject in parents:
                sink[Triple(subject, predicate, parent_subject)] = None
    else:  # pragma: no cover - parser guarantees the object kinds above
        raise MaterializationError(f"unknown object kind {obj!r}")


def materialize_map(
    spec: TriplesMapSpec,
    sources: dict[str, RowSource],
    parent_index: ParentIndex,
) -> list[Triple]:
    """All triples of one map, deduplicated, in scan order."""
    source = sources[spec.name]
    if set(spec.subject.columns()) - set(source.header):
        raise MaterializationError(
            f"{spec.name}: source header changed since validation"
        )
    sink: dict[Triple, None] = {}
    for po in spec.pos:
        _emit_unit(spec, po, source, parent_index, sink)
    return list(sink)


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartitionKey:
    subject_prefix: str
    predicate: str
    graph: str


@dataclass
class MappingPartition:
    key: PartitionKey
    members: list[tuple[TriplesMapSpec, PredicateObjectSpec]] = field(default_factory=list)


def partition(doc: MappingDocument | Iterable[TriplesMapSpec], graph: str = "") -> list[MappingPartition]:
    """Group (map, po) units so that distinct partitions emit disjoint triples."""
    specs = doc.maps if isinstance(doc, MappingDocument) else list(doc)
    table: dict[PartitionKey, MappingPartition] = {}
    for spec in specs:
        prefix = spec.subject.constant_prefix()
        for po in spec.pos:
            key = PartitionKey(prefix, po.predicate.value, graph)
            part = table.get(key)
            if part is None:
                part = table[key] = MappingPartition(key)
            part.members.append((spec, po))
    return list(table.values())


def run_partition(
    part: MappingPartition,
    sources: dict[str, RowSource],
    parent_index: ParentIndex,
) -> list[Triple]:
    sink: dict[Triple, None] = {}
    for spec, po in part.members:
        _emit_unit(spec, po, sources[spec.name], parent_index, sink)
    return list(sink)


# ---------------------------------------------------------------------------
# Whole-corpus run and the statistics report
# ---------------------------------------------------------------------------

REPORT_COLUMNS = ("Entity", "Time (in sec)", "No. of mappings", "Triples generated", "File Size")


def format_size(num_bytes: int) -> str:
    if num_bytes >= 10**9:
        return f"{num_bytes / 10**9:.1f} GB"
    mb = num_bytes / 10**6
    if mb >= 1:
        return f"{mb:.1f} MB"
    return f"{mb:.2f} MB"


@dataclass
class EntityStats:
    name: str
    seconds: float
    mapping_rules: int
    triples: int
    output_bytes: int


@dataclass
class MaterializationReport:
    entities: list[EntityStats]

    def totals(self) -> EntityStats:
        return EntityStats(
            name="Total",
            seconds=sum(e.seconds for e in self.entities),
            mapping_rules=sum(e.mapping_rules for e in self.entities),
            triples=sum(e.triples for e in self.entities),
            output_bytes=sum(e.output_bytes for e in self.entities),
        )

    def _rows(self) -> list[tuple[str, str, str, str, str]]:
        out = []
        for e in [*self.entities, self.totals()]:
            out.append(
                (e.name, f"{e.seconds:.1f}", str(e.mapping_rules), str(e.triples),
                 format_size(e.output_bytes))
            )
        return out

    def to_csv_text(self) -> str:
        lines = [",".join(REPORT_COLUMNS)]
        for row in self._rows():
            lines.append(",".join(f'"{c}"' if "," in c else c for c in row))
        return "\n".join(lines) + "\n"

    def to_table_text(self) -> str:
        rows = [REPORT_COLUMNS, *self._rows()]
        widths = [max(len(r[i]) for r in rows) for i in range(len(REPORT_COLUMNS))]
        lines = []
        for idx, row in enumerate(rows):
            cells = [row[0].ljust(widths[0])]
            cells += [row[i].rjust(widths[i]) for i in range(1, len(row))]
            lines.append(" | ".join(cells))
            if idx == 0 or idx == len(rows) - 2:
                lines.append("-+-".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"


def _emitting_columns(spec: TriplesMapSpec) -> set[str]:
    """Columns whose values end up in output terms (join keys do not)."""
    cols = set(spec.subject.columns())
    for po in spec.pos:
        if isinstance(po.object, ColumnRef):
            cols.add(po.object.column)
        elif isinstance(po.object, TemplateExpr):
            cols.update(po.object.columns())
    return cols


def load_mapping_docs(path: str | Path) -> dict[str, MappingDocument]:
    """Parse one mapping file or every *.yml in a directory; key = entity name."""
    from .yarrrml import parse_yarrrml

    path = Path(path)
    if path.is_dir():
        files = sorted(path.glob("*.yml")) + sorted(path.glob("*.yaml"))
        if not files:
            raise MaterializationError(f"no mapping files in {path}")
    else:
        files = [path]
    return {f.stem: parse_yarrrml(f.read_text(encoding="utf-8")) for f in files}


def materialize_all(
    docs: dict[str, MappingDocument],
    data_dir: str | Path,
    out_dir: str | Path,
    jobs: int = 1,
    suppressed: Iterable[tuple[str, str]] = (),
) -> MaterializationReport:
    """Materialize every entity document into out_dir/<entity>.nt plus manifest.csv.

    Join references resolve across all documents. Partitions run on a worker
    pool of `jobs` threads; output bytes are identical for every jobs >= 1.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if not docs:
        (out_dir / "manifest.csv").write_text("graph_iri,path\n", encoding="utf-8")
        return MaterializationReport(entities=[])
    suppressed = {(Path(src).name, col) for src, col in suppressed}

    all_specs: list[TriplesMapSpec] = []
    for doc in docs.values():
        all_specs.extend(doc.maps)

    # refuse to touch suppressed columns anywhere in an emitting position
    for spec in all_specs:
        src_name = Path(spec.source.path).name
        hits = {c for c in _emitting_columns(spec) if (src_name, c) in suppressed}
        if hits:
            raise SuppressedColumn(f"map {spec.name} emits suppressed column(s) {sorted(hits)}")

    sources: dict[str, RowSource] = {}
    cache: dict[str, RowSource] = {}
    for spec in all_specs:
        resolved = str(resolve_source(data_dir, spec.source.path))
        if resolved not in cache:
            cache[resolved] = read_csv_source(resolved)
        sources[spec.name] = cache[resolved]

    headers = {name: src.header for name, src in sources.items()}
    merged = MappingDocument(prefixes=next(iter(docs.values())).prefixes, maps=all_specs)
    diags = validate(merged, headers)
    if diags:
        raise MaterializationError("; ".join(str(d) for d in diags))

    parent_index = build_parent_indexes(all_specs, sources)

    parts: list[tuple[str, MappingPartition]] = []
    for entity, doc in docs.items():
        for part in partition(doc, graph=entity):
            parts.append((entity, part))

    def job(item):
        entity, part = item
        started = time.perf_counter()
        try:
            triples = run_partition(part, sources, parent_index)
        except Exception as exc:
            raise MaterializationError(f"partition {part.key} failed: {exc}") from exc
        return entity, part.key, triples, time.perf_counter() - started

    if jobs <= 1:
        results = [job(item) for item in parts]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(job, parts))

    per_entity: dict[str, list[tuple[PartitionKey, list[Triple], float]]] = {e: [] for e in docs}
    for entity, key, triples, took in results:
        per_entity[entity].append((key, triples, took))

    report_rows: list[EntityStats] = []
    manifest_lines = ["graph_iri,path"]
    for entity, doc in docs.items():
        chunks = sorted(per_entity[entity], key=lambda c: (c[0].subject_prefix, c[0].predicate))
        path = out_dir / f"{entity}.nt"
        count = 0
        size = 0
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for _key, triples, _took in chunks:
                for t in triples:
                    line = format_triple(t) + "\n"
                    fh.write(line)
                    size += len(line.encode("utf-8"))
                count += len(triples)
        report_rows.append(
            EntityStats(
                name=entity,
                seconds=sum(c[2] for c in chunks),
                mapping_rules=sum(len(m.pos) for m in doc.maps),
                triples=count,
                output_bytes=size,
            )
        )
        manifest_lines.append(f"{GRAPH_BASE}{entity},{path.name}")

    (out_dir / "manifest.csv").write_text("\n".join(manifest_lines) + "\n", encoding="utf-8")
    return MaterializationReport(entities=report_rows)
