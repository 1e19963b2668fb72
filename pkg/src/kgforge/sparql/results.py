"""SPARQL results serialization: the standard JSON format and CSV."""
from __future__ import annotations

import io
import csv
import json

from ..terms import BlankNode, Iri, Literal
from .eval import ResultTable


def _cell(term) -> dict:
    if isinstance(term, Iri):
        return {"type": "uri", "value": term.value}
    if isinstance(term, BlankNode):
        return {"type": "bnode", "value": term.label}
    if isinstance(term, Literal):
        out = {"type": "literal", "value": term.lexical}
        if term.language:
            out["xml:lang"] = term.language
        elif term.datatype:
            out["datatype"] = term.datatype
        return out
    raise TypeError(f"not a term: {term!r}")


def to_document(table: ResultTable) -> dict:
    """The results document as a plain dict (the JSON format's structure)."""
    bindings = []
    for row in table.rows:
        bindings.append(
            {v: _cell(t) for v, t in zip(table.variables, row) if t is not None}
        )
    return {"head": {"vars": table.variables}, "results": {"bindings": bindings}}


def to_json(table: ResultTable) -> str:
    return json.dumps(to_document(table), ensure_ascii=False)


def to_csv(table: ResultTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(table.variables)
    for row in table.rows:
        cells = []
        for t in row:
            if t is None:
                cells.append("")
            elif isinstance(t, Iri):
                cells.append(t.value)
            elif isinstance(t, BlankNode):
                cells.append(f"_:{t.label}")
            else:
                cells.append(t.lexical)
        writer.writerow(cells)
    return buf.getvalue()
