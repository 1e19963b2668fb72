"""HTTP client side of SERVICE evaluation.

Remote endpoints are addressed by allow-list: the query text names the
public endpoint IRI and configuration maps it to the URL actually called,
which is how the test and demo setups point Wikidata-shaped queries at a
local mock without editing query text.
"""
from __future__ import annotations

import json
import urllib.error
import urllib.parse
import urllib.request

from ..terms import BlankNode, Iri, Literal, Term, Variable, canonical_term
from ..ntriples import format_term
from ..store.dataset import TriplePattern


class FederationError(Exception):
    def __init__(self, endpoint: str, cause: str):
        super().__init__(f"SERVICE <{endpoint}>: {cause}")
        self.endpoint = endpoint
        self.cause = cause


def pattern_to_sparql(pattern: TriplePattern) -> str:
    parts = []
    for t in (pattern.subject, pattern.predicate, pattern.object):
        if isinstance(t, Variable):
            parts.append(f"?{t.name}")
        elif isinstance(t, BlankNode):
            raise FederationError("", "blank nodes cannot be shipped to a remote endpoint")
        else:
            parts.append(format_term(t))
    return " ".join(parts) + " ."


def build_select(patterns: list[TriplePattern]) -> str:
    names: list[str] = []
    for p in patterns:
        for t in (p.subject, p.predicate, p.object):
            if isinstance(t, Variable) and t.name not in names:
                names.append(t.name)
    projection = " ".join(f"?{n}" for n in names) if names else "*"
    body = "\n  ".join(pattern_to_sparql(p) for p in patterns)
    return f"SELECT {projection} WHERE {{\n  {body}\n}}"


def parse_results_json(data: bytes | str) -> list[dict[str, Term]]:
    doc = json.loads(data)
    rows = []
    for binding in doc["results"]["bindings"]:
        row: dict[str, Term] = {}
        for var, cell in binding.items():
            kind = cell.get("type")
            value = cell.get("value", "")
            if kind == "uri":
                term: Term = Iri(value)
            elif kind == "bnode":
                term = BlankNode(value)
            elif kind in ("literal", "typed-literal"):
                term = Literal(
                    value,
                    datatype=cell.get("datatype"),
                    language=cell.get("xml:lang"),
                )
            else:
                raise ValueError(f"unknown binding type {kind!r}")
            # value semantics for joins: string-typed == plain
            row[var] = canonical_term(term)
        rows.append(row)
    return rows


class ServiceClient:
    """Issues SELECTs to remote SPARQL endpoints over HTTP."""

    def __init__(self, allowlist: dict[str, str] | None = None, timeout: float = 10.0):
        # allowlist maps endpoint IRI (as written in queries) -> URL to call;
        # None disables the check and calls endpoints directly.
        self.allowlist = allowlist
        self.timeout = timeout

    def resolve(self, endpoint_iri: str) -> str:
        if self.allowlist is None:
            return endpoint_iri
        url = self.allowlist.get(endpoint_iri)
        if url is None:
            raise FederationError(endpoint_iri, "endpoint not in the allow-list")
        return url

    def select(self, endpoint_iri: str, patterns: list[TriplePattern]) -> list[dict[str, Term]]:
        return self.query(endpoint_iri, build_select(patterns))

    def query(self, endpoint_iri: str, query_text: str) -> list[dict[str, Term]]:
        url = self.resolve(endpoint_iri)
        full = url + ("&" if "?" in url else "?") + urllib.parse.urlencode({"query": query_text})
        request = urllib.request.Request(
            full, headers={"Accept": "application/sparql-results+json"}
        )
        try:
            with urllib.request.urlopen(request, timeout=self.timeout) as resp:
                body = resp.read()
        except (urllib.error.URLError, urllib.error.HTTPError, OSError, TimeoutError) as exc:
            raise FederationError(endpoint_iri, str(exc)) from exc
        try:
            return parse_results_json(body)
        except (ValueError, KeyError, TypeError) as exc:
            raise FederationError(endpoint_iri, f"malformed results document: {exc}") from exc
