"""YARRRML mapping documents: parse, model, validate.

The supported subset is the one the corpus mappings use: per-row CSV sources,
subject templates, constant predicates, column/template/constant objects, and
equal-join references to other maps. Anything outside that subset is a hard
error rather than a warning, so a document that parses and validates cleanly
is guaranteed to materialize.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import yaml

from .terms import Iri, Literal, PrefixMap, Term, UnknownPrefix, expand_curie
from .vocab import RDF

_CURIE_LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_.-]*\Z")
_TEMPLATE_REF_RE = re.compile(r"\$\(([^)]*)\)")


class MappingSyntaxError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class UnsupportedFeature(ValueError):
    def __init__(self, path: str, feature: str):
        super().__init__(f"{path}: unsupported feature: {feature}")
        self.path = path
        self.feature = feature


@dataclass(frozen=True, slots=True)
class ConstantText:
    text: str


@dataclass(frozen=True, slots=True)
class ColumnRef:
    column: str


@dataclass(frozen=True, slots=True)
class TemplateExpr:
    segments: tuple[ConstantText | ColumnRef, ...]

    def columns(self) -> list[str]:
        return [s.column for s in self.segments if isinstance(s, ColumnRef)]

    def constant_prefix(self) -> str:
        """Leading constant text, the partitioning handle for subjects."""
        if self.segments and isinstance(self.segments[0], ConstantText):
            return self.segments[0].text
        return ""


@dataclass(frozen=True, slots=True)
class ConstantTerm:
    term: Term


@dataclass(frozen=True, slots=True)
class JoinRef:
    parent_map: str
    child_column: str
    parent_column: str


ObjectSpec = ConstantTerm | ColumnRef | TemplateExpr | JoinRef


@dataclass(frozen=True, slots=True)
class PredicateObjectSpec:
    predicate: Iri
    object: ObjectSpec
    datatype: str | None = None
    language: str | None = None


@dataclass(frozen=True, slots=True)
class LogicalSource:
    path: str
    format: str = "csv"


@dataclass(frozen=True, slots=True)
class TriplesMapSpec:
    name: str
    source: LogicalSource
    subject: TemplateExpr
    pos: tuple[PredicateObjectSpec, ...]
    # YARRRML map key this spec came from; differs from name only when a map
    # declares several sources and gets expanded into one spec per source.
    group: str = ""

    def group_name(self) -> str:
        return self.group or self.name


@dataclass
class MappingDocument:
    prefixes: PrefixMap
    maps: list[TriplesMapSpec] = field(default_factory=list)

    def map_names(self) -> set[str]:
        return {m.name for m in self.maps}

    def group_names(self) -> set[str]:
        return {m.group_name() for m in self.maps}


@dataclass(frozen=True)
class Diagnostic:
    kind: str  # missing_column | unknown_parent_map | missing_header
    map_name: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}({self.map_name}, {self.detail})"


def parse_template(text: str, path: str) -> TemplateExpr:
    segments: list[ConstantText | ColumnRef] = []
    last = 0
    for m in _TEMPLATE_REF_RE.finditer(text):
        if m.start() > last:
            segments.append(ConstantText(text[last:m.start()]))
        column = m.group(1)
        if not column:
            raise MappingSyntaxError(path, "empty column reference $()")
        segments.append(ColumnRef(column))
        last = m.end()
    if last < len(text):
        segments.append(ConstantText(text[last:]))
    if not segments:
        raise MappingSyntaxError(path, "empty template")
    return TemplateExpr(tuple(segments))


def _expand_constant_iri(value: str, prefixes: PrefixMap, path: str) -> Iri:
    """Predicate position: 'a', a CURIE, or an absolute IRI."""
    if value == "a":
        return Iri(RDF + "type")
    if "://" in value or value.startswith("urn:"):
        return Iri(value)
    if ":" in value:
        label = value.split(":", 1)[0]
        if _CURIE_LABEL_RE.match(label):
            try:
                return expand_curie(value, prefixes)
            except UnknownPrefix as exc:
                raise MappingSyntaxError(path, str(exc)) from exc
    raise MappingSyntaxError(path, f"expected CURIE or IRI, got {value!r}")


def _classify_constant(value: str, prefixes: PrefixMap, path: str) -> Term:
    """Constant object: CURIEs and absolute IRIs become IRIs, the rest literals."""
    if "://" in value or value.startswith("urn:"):
        return Iri(value)
    if ":" in value:
        label = value.split(":", 1)[0]
        if _CURIE_LABEL_RE.match(label):
            try:
                return expand_curie(value, prefixes)
            except UnknownPrefix as exc:
                raise MappingSyntaxError(path, str(exc)) from exc
    return Literal(value)


def _object_from_string(value: str, prefixes: PrefixMap, path: str) -> ObjectSpec:
    refs = _TEMPLATE_REF_RE.findall(value)
    if not refs:
        return ConstantTerm(_classify_constant(value, prefixes, path))
    if len(refs) == 1 and value == f"$({refs[0]})":
        if not refs[0]:
            raise MappingSyntaxError(path, "empty column reference $()")
        return ColumnRef(refs[0])
    return parse_template(value, path)


def _parse_join(obj: dict, prefixes: PrefixMap, path: str) -> JoinRef:
    allowed = {"mapping", "condition"}
    unknown = set(obj) - allowed
    if unknown:
        raise MappingSyntaxError(path, f"unknown key {sorted(unknown)[0]!r}")
    parent = obj.get("mapping")
    if not isinstance(parent, str) or not parent:
        raise MappingSyntaxError(path, "join object needs a 'mapping' name")
    cond = obj.get("condition")
    if not isinstance(cond, dict):
        raise MappingSyntaxError(path, "join object needs a 'condition'")
    fn = cond.get("function")
    if fn != "equal":
        raise UnsupportedFeature(path, f"join condition function {fn!r}")
    params = cond.get("parameters")
    if not isinstance(params, list) or len(params) != 2:
        raise MappingSyntaxError(path, "condition needs exactly two parameters")
    child_col = parent_col = None
    for i, param in enumerate(params):
        if not isinstance(param, list) or len(param) not in (2, 3):
            raise MappingSyntaxError(path, f"malformed condition parameter {i}")
        value = param[1]
        m = _TEMPLATE_REF_RE.fullmatch(str(value))
        if not m or not m.group(1):
            raise MappingSyntaxError(path, f"condition parameter must be $(column), got {value!r}")
        column = m.group(1)
        flag = param[2] if len(param) == 3 else ("s" if i == 0 else "o")
        if flag == "s":
            child_col = column
        elif flag == "o":
            parent_col = column
        else:
            raise MappingSyntaxError(path, f"condition parameter flag must be s or o, got {flag!r}")
    if child_col is None or parent_col is None:
        raise MappingSyntaxError(path, "condition needs one child (s) and one parent (o) column")
    return JoinRef(parent_map=parent, child_column=child_col, parent_column=parent_col)


def _attach_annotation(third: str, prefixes: PrefixMap, path: str) -> tuple[str | None, str | None]:
    """Third element of a [p, o, x] entry: 'tag~lang' or a datatype CURIE/IRI."""
    if third.endswith("~lang"):
        return None, third[: -len("~lang")]
    return _expand_constant_iri(third, prefixes, path).value, None


def _parse_po_item(item, prefixes: PrefixMap, path: str) -> list[PredicateObjectSpec]:
    out: list[PredicateObjectSpec] = []
    if isinstance(item, list):
        if len(item) not in (2, 3):
            raise MappingSyntaxError(path, f"po entry must have 2 or 3 elements, has {len(item)}")
        predicate = _expand_constant_iri(str(item[0]), prefixes, path)
        datatype = language = None
        if len(item) == 3:
            datatype, language = _attach_annotation(str(item[2]), prefixes, path)
        objects = item[1] if isinstance(item[1], list) else [item[1]]
        for obj in objects:
            spec = _object_from_string(str(obj), prefixes, path)
            if (datatype or language) and not isinstance(spec, (ColumnRef, ConstantTerm)):
                raise MappingSyntaxError(path, "datatype/language only applies to literal objects")
            out.append(PredicateObjectSpec(predicate, spec, datatype, language))
        return out
    if isinstance(item, dict):
        unknown = set(item) - {"p", "o"}
        if unknown:
            raise MappingSyntaxError(path, f"unknown key {sorted(unknown)[0]!r}")
        if "p" not in item or "o" not in item:
            raise MappingSyntaxError(path, "po entry needs both 'p' and 'o'")
        predicate = _expand_constant_iri(str(item["p"]), prefixes, path)
        objects = item["o"] if isinstance(item["o"], list) else [item["o"]]
        for obj in objects:
            if isinstance(obj, dict):
                out.append(PredicateObjectSpec(predicate, _parse_join(obj, prefixes, path)))
            else:
                out.append(PredicateObjectSpec(predicate, _object_from_string(str(obj), prefixes, path)))
        return out
    raise MappingSyntaxError(path, f"malformed po entry: {item!r}")


def _parse_sources(value, path: str) -> list[LogicalSource]:
    entries = value if isinstance(value, list) else [value]
    if not entries:
        raise MappingSyntaxError(path, "empty sources list")
    sources = []
    for i, entry in enumerate(entries):
        if isinstance(entry, list):
            if len(entry) != 1:
                raise MappingSyntaxError(f"{path}[{i}]", "source entry must be a single path")
            entry = entry[0]
        if not isinstance(entry, str):
            raise MappingSyntaxError(f"{path}[{i}]", f"malformed source {entry!r}")
        if "~" in entry:
            spec_path, fmt = entry.rsplit("~", 1)
            if fmt != "csv":
                raise UnsupportedFeature(f"{path}[{i}]", f"source format {fmt!r}")
        else:
            spec_path = entry
        sources.append(LogicalSource(path=spec_path, format="csv"))
    return sources


def parse_yarrrml(text: str) -> MappingDocument:
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise MappingSyntaxError("<document>", f"not valid YAML: {exc}") from exc
    if not isinstance(raw, dict):
        raise MappingSyntaxError("<document>", "document must be a mapping")
    unknown = set(raw) - {"prefixes", "mappings"}
    if unknown:
        raise MappingSyntaxError("<document>", f"unknown key {sorted(unknown)[0]!r}")

    prefixes = PrefixMap()
    for label, ns in (raw.get("prefixes") or {}).items():
        prefixes.bind(str(label), str(ns))

    mappings = raw.get("mappings")
    if not isinstance(mappings, dict):
        raise MappingSyntaxError("mappings", "missing or malformed 'mappings' section")

    doc = MappingDocument(prefixes=prefixes)
    for name, body in mappings.items():
        map_path = f"mappings.{name}"
        if not isinstance(body, dict):
            raise MappingSyntaxError(map_path, "map body must be a mapping")
        unknown = set(body) - {"sources", "s", "po"}
        if unknown:
            raise MappingSyntaxError(map_path, f"unknown key {sorted(unknown)[0]!r}")
        if "sources" not in body:
            raise MappingSyntaxError(map_path, "missing 'sources'")
        if "s" not in body:
            raise MappingSyntaxError(map_path, "missing subject template 's'")
        sources = _parse_sources(body["sources"], f"{map_path}.sources")
        subject = parse_template(str(body["s"]), f"{map_path}.s")
        pos: list[PredicateObjectSpec] = []
        for i, item in enumerate(body.get("po") or []):
            pos.extend(_parse_po_item(item, prefixes, f"{map_path}.po[{i}]"))
        for k, source in enumerate(sources):
            spec_name = str(name) if k == 0 else f"{name}-{k + 1}"
            doc.maps.append(
                TriplesMapSpec(
                    name=spec_name,
                    source=source,
                    subject=subject,
                    pos=tuple(pos),
                    group=str(name),
                )
            )
    names = [m.name for m in doc.maps]
    if len(names) != len(set(names)):
        raise MappingSyntaxError("mappings", "duplicate map names after source expansion")
    return doc


def _spec_columns(spec: TriplesMapSpec) -> list[tuple[str, str]]:
    """(column, where) pairs referenced by this spec against its own source."""
    cols = [(c, "subject") for c in spec.subject.columns()]
    for i, po in enumerate(spec.pos):
        obj = po.object
        if isinstance(obj, ColumnRef):
            cols.append((obj.column, f"po[{i}]"))
        elif isinstance(obj, TemplateExpr):
            cols.extend((c, f"po[{i}]") for c in obj.columns())
        elif isinstance(obj, JoinRef):
            cols.append((obj.child_column, f"po[{i}]"))
    return cols


def validate(doc: MappingDocument, headers: dict[str, list[str]]) -> list[Diagnostic]:
    """Check column references and join targets against actual CSV headers.

    headers maps spec name -> header columns of its source. Empty result
    means the document is safe to materialize.
    """
    diags: list[Diagnostic] = []
    groups = doc.group_names()
    by_group: dict[str, list[TriplesMapSpec]] = {}
    for spec in doc.maps:
        by_group.setdefault(spec.group_name(), []).append(spec)

    for spec in doc.maps:
        header = headers.get(spec.name)
        if header is None:
            diags.append(Diagnostic("missing_header", spec.name, spec.source.path))
            continue
        known = set(header)
        for column, _where in _spec_columns(spec):
            if column not in known:
                diags.append(Diagnostic("missing_column", spec.name, column))
        for po in spec.pos:
            if isinstance(po.object, JoinRef):
                if po.object.parent_map not in groups:
                    diags.append(Diagnostic("unknown_parent_map", spec.name, po.object.parent_map))
                    continue
                for parent in by_group[po.object.parent_map]:
                    parent_header = headers.get(parent.name)
                    if parent_header is not None and po.object.parent_column not in parent_header:
                        diags.append(
                            Diagnostic("missing_column", parent.name, po.object.parent_column)
                        )
    return diags
