"""Bottom-up query evaluation over a Dataset.

Stage order is fixed: BGP join, FILTER, BIND, OPTIONAL left joins, SERVICE
joins, grouping/aggregation, projection, DISTINCT, ORDER BY, OFFSET/LIMIT.
Tie-breaking in ORDER BY is the stable sort over the pre-sort row order,
which is itself deterministic (index scan order).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable

from ..store.dataset import Dataset, TriplePattern
from ..terms import BlankNode, Literal, Term, TermError, Variable, canonical_term
from .expr import (
    EvalTypeError,
    effective_boolean,
    evaluate_expression,
    numeric_value,
    _NUMERIC_DATATYPES,
    is_string_literal,
)
from .federation import FederationError, ServiceClient
from .syntax import GroupPattern, OrderKey, Query, ServiceClause
from ..vocab import XSD

XSD_INTEGER = XSD + "integer"


class EvaluationError(Exception):
    pass


class Timeout(EvaluationError):
    pass


@dataclass
class ResultTable:
    variables: list[str]
    rows: list[tuple[Term | None, ...]] = field(default_factory=list)
    ordered: bool = False

    def as_dicts(self) -> list[dict[str, Term]]:
        return [
            {v: t for v, t in zip(self.variables, row) if t is not None}
            for row in self.rows
        ]


class _Deadline:
    def __init__(self, seconds: float | None):
        self.at = None if seconds is None else time.monotonic() + seconds
        self._tick = 0

    def check(self):
        self._tick += 1
        if self.at is not None and (self._tick & 0x3FF) == 0 and time.monotonic() > self.at:
            raise Timeout("query evaluation deadline exceeded")


def _pattern_vars(patterns: Iterable[TriplePattern]) -> list[str]:
    seen: list[str] = []
    for p in patterns:
        for t in (p.subject, p.predicate, p.object):
            if isinstance(t, Variable) and t.name not in seen:
                seen.append(t.name)
    return seen


def _substitute(pattern: TriplePattern, row: dict[str, Term]) -> TriplePattern | None:
    """Bind known variables into the pattern; None if the result is unmatchable."""
    def sub(t):
        if isinstance(t, Variable):
            return row.get(t.name, t)
        return t

    try:
        return TriplePattern(sub(pattern.subject), sub(pattern.predicate), sub(pattern.object))
    except TermError:
        return None  # e.g. a literal bound into subject position


def _join_order(dataset: Dataset, patterns: list[TriplePattern], graph: str | None):
    """Greedy cheapest-first order that prefers patterns sharing a variable
    with what is already bound, so disconnected patterns don't cross-join."""
    remaining = [
        (dataset.count_pattern(p, graph), i, p, {
            t.name for t in (p.subject, p.predicate, p.object) if isinstance(t, Variable)
        })
        for i, p in enumerate(patterns)
    ]
    ordered = []
    bound: set[str] = set()
    while remaining:
        connected = [r for r in remaining if not ordered or r[3] & bound]
        pick = min(connected or remaining, key=lambda r: (r[0], r[1]))
        remaining.remove(pick)
        ordered.append(pick[2])
        bound |= pick[3]
    return ordered


def _eval_bgp(
    dataset: Dataset,
    patterns: list[TriplePattern],
    deadline: _Deadline,
    graph: str | None = None,
) -> list[dict[str, Term]]:
    if not patterns:
        return [{}]
    rows: list[dict[str, Term]] = [{}]
    for pattern in _join_order(dataset, patterns, graph):
        next_rows: list[dict[str, Term]] = []
        for row in rows:
            deadline.check()
            bound = _substitute(pattern, row)
            if bound is None:
                continue
            for binding in dataset.match(bound, graph):
                next_rows.append({**row, **binding})
        rows = next_rows
        if not rows:
            break
    return rows


def _apply_filters(rows, filters, deadline):
    for expr in filters:
        kept = []
        for row in rows:
            deadline.check()
            try:
                if effective_boolean(evaluate_expression(expr, row)):
                    kept.append(row)
            except EvalTypeError:
                pass  # type error eliminates the row
        rows = kept
    return rows


def _apply_binds(rows, binds):
    for expr, name in binds:
        for row in rows:
            try:
                row[name] = evaluate_expression(expr, row)
            except EvalTypeError:
                pass  # leave unbound
    return rows


def _compatible(a: dict[str, Term], b: dict[str, Term]) -> bool:
    for k, v in b.items():
        mine = a.get(k)
        if mine is not None and canonical_term(mine) != canonical_term(v):
            return False
    return True


def _left_join(rows, right_rows):
    out = []
    for row in rows:
        extended = False
        for rr in right_rows:
            if _compatible(row, rr):
                out.append({**rr, **row})
                extended = True
        if not extended:
            out.append(row)
    return out


def evaluate_service(
    client: ServiceClient,
    clause: ServiceClause,
    incoming: list[dict[str, Term]],
) -> list[dict[str, Term]]:
    """Send the clause pattern remotely and join results with incoming rows.

    When every incoming row binds a variable shared with the remote pattern,
    the binding is substituted into the remote query (one call per distinct
    value combination), so the endpoint only evaluates the relevant slice.
    """
    service_vars = _pattern_vars(clause.patterns)
    shared = [
        v for v in service_vars
        if incoming and all(v in row for row in incoming)
    ]
    joined: list[dict[str, Term]] = []
    if shared:
        combos: dict[tuple, list[dict[str, Term]]] = {}
        for row in incoming:
            key = tuple(canonical_term(row[v]) for v in shared)
            combos.setdefault(key, []).append(row)
        for key, bucket in combos.items():
            binding = dict(zip(shared, key))
            patterns = [_substitute(p, binding) for p in clause.patterns]
            if any(p is None for p in patterns):
                continue
            remote = client.select(clause.endpoint.value, patterns)
            for row in bucket:
                for rr in remote:
                    if _compatible(row, rr):
                        joined.append({**rr, **row})
    else:
        remote = client.select(clause.endpoint.value, clause.patterns)
        for row in incoming:
            for rr in remote:
                if _compatible(row, rr):
                    joined.append({**rr, **row})
    return joined


def _aggregate(rows, query: Query):
    keys = query.group_by
    groups: dict[tuple, list[dict[str, Term]]] = {}
    order: list[tuple] = []
    for row in rows:
        key = tuple(
            canonical_term(row[k]) if k in row else None for k in keys
        )
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(row)
    if not keys and not order:
        order.append(())
        groups[()] = []

    out = []
    for key in order:
        bucket = groups[key]
        row: dict[str, Term] = {k: v for k, v in zip(keys, key) if v is not None}
        for alias, agg in query.aggregates.items():
            if agg.arg is None:
                if agg.distinct:
                    n = len({tuple(sorted((k, str(v)) for k, v in r.items())) for r in bucket})
                else:
                    n = len(bucket)
            else:
                values = [canonical_term(r[agg.arg]) for r in bucket if agg.arg in r]
                n = len(set(values)) if agg.distinct else len(values)
            row[alias] = Literal(str(n), datatype=XSD_INTEGER)
        out.append(row)
    return out


def sort_rank(term: Term | None):
    """Total order used by ORDER BY: unbound, numbers, strings, other
    literals, blank nodes, IRIs."""
    if term is None:
        return (0,)
    if isinstance(term, Literal):
        if term.datatype in _NUMERIC_DATATYPES:
            try:
                return (1, float(numeric_value(term)))
            except EvalTypeError:
                return (4, term.datatype, term.lexical)
        if is_string_literal(term):
            return (2, term.lexical)
        if term.language is not None:
            return (3, term.language, term.lexical)
        return (4, term.datatype or "", term.lexical)
    if isinstance(term, BlankNode):
        return (5, term.label)
    return (6, term.value)


def _order_rows(rows: list[dict[str, Term]], order_by: list[OrderKey]):
    for key in reversed(order_by):
        def rank(row):
            try:
                return sort_rank(evaluate_expression(key.expr, row))
            except EvalTypeError:
                return (0,)

        rows = sorted(rows, key=rank, reverse=key.descending)
    return rows


def evaluate(
    dataset: Dataset,
    query: Query,
    federation: ServiceClient | None = None,
    timeout: float | None = 30.0,
    graph: str | None = None,
) -> ResultTable:
    deadline = _Deadline(timeout)
    group = query.pattern

    rows = _eval_bgp(dataset, group.patterns, deadline, graph)
    rows = _apply_filters(rows, group.filters, deadline)
    rows = _apply_binds(rows, group.binds)
    for opt in group.optionals:
        opt_rows = _eval_bgp(dataset, opt.patterns, deadline, graph)
        opt_rows = _apply_filters(opt_rows, opt.filters, deadline)
        opt_rows = _apply_binds(opt_rows, opt.binds)
        rows = _left_join(rows, opt_rows)
    for clause in group.services:
        if federation is None:
            raise FederationError(clause.endpoint.value, "no federation client configured")
        deadline.check()
        rows = evaluate_service(federation, clause, rows)

    if query.aggregates or query.group_by:
        rows = _aggregate(rows, query)

    variables = list(query.visible_vars) if query.select_all else list(query.select_items)
    projected = [{v: row[v] for v in variables if v in row} for row in rows]

    if query.distinct:
        seen = set()
        unique = []
        for row in projected:
            key = tuple(canonical_term(row[v]) if v in row else None for v in variables)
            if key not in seen:
                seen.add(key)
                unique.append(row)
        projected = unique

    if query.order_by:
        projected = _order_rows(projected, query.order_by)

    if query.offset:
        projected = projected[query.offset:]
    if query.limit is not None:
        projected = projected[: query.limit]

    return ResultTable(
        variables=variables,
        rows=[tuple(row.get(v) for v in variables) for row in projected],
        ordered=bool(query.order_by),
    )
