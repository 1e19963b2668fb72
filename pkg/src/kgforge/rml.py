"""Export a parsed mapping document as RML vocabulary triples."""
from __future__ import annotations

import re
from typing import Iterator

from .terms import BlankNode, Iri, Literal, Triple
from .vocab import RDF
from .yarrrml import (
    ColumnRef,
    ConstantTerm,
    JoinRef,
    MappingDocument,
    TemplateExpr,
    TriplesMapSpec,
)

RR = "http://www.w3.org/ns/r2rml#"
RML = "http://semweb.mmlab.be/ns/rml#"
QL = "http://semweb.mmlab.be/ns/ql#"

_LABEL_SAFE = re.compile(r"[^A-Za-z0-9_-]")


def _node_label(name: str) -> str:
    label = _LABEL_SAFE.sub("-", name)
    if not label or not label[0].isalnum():
        label = "m" + label
    return label


def rml_template(template: TemplateExpr) -> str:
    """Rewrite $(col) references to the {col} form RML templates use."""
    parts = []
    for seg in template.segments:
        if isinstance(seg, ColumnRef):
            parts.append("{" + seg.column + "}")
        else:
            parts.append(seg.text)
    return "".join(parts)


def _map_node(spec: TriplesMapSpec) -> Iri:
    return Iri(f"urn:map:{_node_label(spec.name)}")


def export_rml(doc: MappingDocument) -> Iterator[Triple]:
    rdf_type = Iri(RDF + "type")
    for spec in doc.maps:
        node = _map_node(spec)
        base = _node_label(spec.name)
        ls = BlankNode(f"{base}_ls")
        sm = BlankNode(f"{base}_sm")
        yield Triple(node, rdf_type, Iri(RR + "TriplesMap"))
        yield Triple(node, Iri(RML + "logicalSource"), ls)
        yield Triple(ls, Iri(RML + "source"), Literal(spec.source.path))
        yield Triple(ls, Iri(RML + "referenceFormulation"), Iri(QL + "CSV"))
        yield Triple(node, Iri(RR + "subjectMap"), sm)
        yield Triple(sm, Iri(RR + "template"), Literal(rml_template(spec.subject)))
        for i, po in enumerate(spec.pos):
            pom = BlankNode(f"{base}_pom{i}")
            om = BlankNode(f"{base}_om{i}")
            yield Triple(node, Iri(RR + "predicateObjectMap"), pom)
            yield Triple(pom, Iri(RR + "predicate"), po.predicate)
            yield Triple(pom, Iri(RR + "objectMap"), om)
            obj = po.object
            if isinstance(obj, ColumnRef):
                yield Triple(om, Iri(RML + "reference"), Literal(obj.column))
                if po.datatype:
                    yield Triple(om, Iri(RR + "datatype"), Iri(po.datatype))
                if po.language:
                    yield Triple(om, Iri(RR + "language"), Literal(po.language))
            elif isinstance(obj, TemplateExpr):
                yield Triple(om, Iri(RR + "template"), Literal(rml_template(obj)))
            elif isinstance(obj, ConstantTerm):
                yield Triple(om, Iri(RR + "constant"), obj.term)
                if po.datatype and isinstance(obj.term, Literal):
                    yield Triple(om, Iri(RR + "datatype"), Iri(po.datatype))
            elif isinstance(obj, JoinRef):
                jc = BlankNode(f"{base}_jc{i}")
                yield Triple(om, Iri(RR + "parentTriplesMap"), Iri(f"urn:map:{_node_label(obj.parent_map)}"))
                yield Triple(om, Iri(RR + "joinCondition"), jc)
                yield Triple(jc, Iri(RR + "child"), Literal(obj.child_column))
                yield Triple(jc, Iri(RR + "parent"), Literal(obj.parent_column))
