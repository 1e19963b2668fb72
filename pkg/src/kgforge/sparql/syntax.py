"""SPARQL-subset query model and recursive-descent parser.

Covers the query shapes the service exposes: SELECT with optional DISTINCT,
basic graph patterns with ; and , continuations, FILTER, BIND, OPTIONAL,
SERVICE, COUNT aggregates with GROUP BY, multi-key ORDER BY and
LIMIT/OFFSET. Everything else is reported as an unsupported feature rather
than misparsed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..terms import Iri, Literal, Term, TermError, Variable
from ..store.dataset import TriplePattern
from ..vocab import RDF, XSD

_IDENT_START = re.compile(r"[A-Za-z_]")
_IDENT = re.compile(r"[A-Za-z0-9_.-]*")
_LOCAL = re.compile(r"[A-Za-z0-9_.%-]*")
_VARNAME = re.compile(r"[A-Za-z0-9_]+")

_KEYWORDS = {
    "PREFIX", "SELECT", "DISTINCT", "WHERE", "FILTER", "BIND", "AS",
    "OPTIONAL", "SERVICE", "ORDER", "GROUP", "BY", "ASC", "DESC",
    "LIMIT", "OFFSET", "COUNT", "TRUE", "FALSE", "A",
}

_UNSUPPORTED_KEYWORDS = {
    "CONSTRUCT", "ASK", "DESCRIBE", "UNION", "GRAPH", "MINUS", "VALUES",
    "EXISTS", "HAVING", "INSERT", "DELETE", "SUM", "AVG", "MIN", "MAX",
    "GROUP_CONCAT", "SAMPLE",
}

_FUNCTIONS = {
    "CONCAT", "URI", "IRI", "ENCODE_FOR_URI", "STR", "CONTAINS", "REGEX",
    "LANG", "LANGMATCHES",
}

CAST_DATATYPES = {XSD + "integer", XSD + "decimal", XSD + "float", XSD + "double"}


class QuerySyntaxError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnsupportedFeature(QuerySyntaxError):
    def __init__(self, feature: str, line: int = 0, column: int = 0):
        super().__init__(f"unsupported feature: {feature}", line, column)
        self.feature = feature


# ---------------------------------------------------------------------------
# Expression tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VarExpr:
    name: str


@dataclass(frozen=True)
class ConstExpr:
    term: Term


@dataclass(frozen=True)
class Comparison:
    op: str  # = != < <= > >=
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class BoolOp:
    op: str  # && ||
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class NotExpr:
    arg: "Expression"


@dataclass(frozen=True)
class Arith:
    op: str  # + - * /
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class NegExpr:
    arg: "Expression"


@dataclass(frozen=True)
class FuncCall:
    name: str  # canonical builtin name or cast datatype IRI
    args: tuple["Expression", ...]


Expression = VarExpr | ConstExpr | Comparison | BoolOp | NotExpr | Arith | NegExpr | FuncCall


# ---------------------------------------------------------------------------
# Query tree
# ---------------------------------------------------------------------------

@dataclass
class Aggregate:
    alias: str
    arg: str | None  # variable name, or None for COUNT(*)
    distinct: bool = False


@dataclass
class OrderKey:
    expr: Expression
    descending: bool = False


@dataclass
class ServiceClause:
    endpoint: Iri
    patterns: list[TriplePattern] = field(default_factory=list)


@dataclass
class GroupPattern:
    patterns: list[TriplePattern] = field(default_factory=list)
    filters: list[Expression] = field(default_factory=list)
    binds: list[tuple[Expression, str]] = field(default_factory=list)
    optionals: list["GroupPattern"] = field(default_factory=list)
    services: list[ServiceClause] = field(default_factory=list)


@dataclass
class Query:
    prefixes: dict[str, str]
    distinct: bool
    select_all: bool
    select_items: list[str]  # projection order: var names and aggregate aliases
    aggregates: dict[str, Aggregate]
    pattern: GroupPattern
    group_by: list[str]
    order_by: list[OrderKey]
    limit: int | None
    offset: int
    visible_vars: list[str]  # in-scope variables in first-appearance order


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

@dataclass
class _Token:
    kind: str  # IRI PNAME VAR STRING NUMBER KEYWORD IDENT PUNCT EOF
    value: object
    line: int
    col: int


_PUNCT2 = {"&&", "||", "!=", "<=", ">=", "^^"}
_PUNCT1 = set("{}().,;=<>!+-*/@^")

_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f",
            '"': '"', "'": "'", "\\": "\\"}


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    line = 1
    line_start = 0

    def err(msg, pos):
        raise QuerySyntaxError(msg, line, pos - line_start + 1)

    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
            line_start = i
            continue
        if ch in " \t\r":
            i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        col = i - line_start + 1
        if ch == "<":
            # IRIREF if a same-line '>' closes it without intervening whitespace
            j = i + 1
            while j < n and text[j] not in ">\n \t":
                j += 1
            if j < n and text[j] == ">":
                tokens.append(_Token("IRI", text[i + 1:j], line, col))
                i = j + 1
                continue
            if i + 1 < n and text[i + 1] == "=":
                tokens.append(_Token("PUNCT", "<=", line, col))
                i += 2
            else:
                tokens.append(_Token("PUNCT", "<", line, col))
                i += 1
            continue
        if ch in "?$":
            m = _VARNAME.match(text, i + 1)
            if not m or m.start() == m.end():
                err("expected variable name", i)
            tokens.append(_Token("VAR", m.group(0), line, col))
            i = m.end()
            continue
        if ch in "\"'":
            quote = ch
            j = i + 1
            out = []
            while True:
                if j >= n or text[j] == "\n":
                    err("unterminated string", i)
                c = text[j]
                if c == "\\":
                    if j + 1 >= n:
                        err("dangling escape", j)
                    esc = text[j + 1]
                    if esc in _ESCAPES:
                        out.append(_ESCAPES[esc])
                        j += 2
                    elif esc == "u":
                        out.append(chr(int(text[j + 2:j + 6], 16)))
                        j += 6
                    elif esc == "U":
                        out.append(chr(int(text[j + 2:j + 10], 16)))
                        j += 10
                    else:
                        err(f"unknown escape \\{esc}", j)
                elif c == quote:
                    j += 1
                    break
                else:
                    out.append(c)
                    j += 1
            tokens.append(_Token("STRING", "".join(out), line, col))
            i = j
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            seen_dot = False
            seen_exp = False
            while j < n:
                c = text[j]
                if c.isdigit():
                    j += 1
                elif c == "." and not seen_dot and not seen_exp and j + 1 < n and text[j + 1].isdigit():
                    seen_dot = True
                    j += 1
                elif c in "eE" and not seen_exp and j + 1 < n and (
                    text[j + 1].isdigit() or (text[j + 1] in "+-" and j + 2 < n and text[j + 2].isdigit())
                ):
                    seen_exp = True
                    j += 2 if text[j + 1] in "+-" else 1
                else:
                    break
            tokens.append(_Token("NUMBER", text[i:j], line, col))
            i = j
            continue
        if _IDENT_START.match(ch):
            m = _IDENT.match(text, i + 1)
            end = m.end() if m else i + 1
            word = text[i:end]
            # trailing dots belong to the statement, not the name
            while word.endswith("."):
                word = word[:-1]
                end -= 1
            if end < n and text[end] == ":":
                lm = _LOCAL.match(text, end + 1)
                local_end = lm.end() if lm else end + 1
                local = text[end + 1:local_end]
                while local.endswith("."):
                    local = local[:-1]
                    local_end -= 1
                tokens.append(_Token("PNAME", (word, local), line, col))
                i = local_end
                continue
            upper = word.upper()
            if upper in _UNSUPPORTED_KEYWORDS:
                raise UnsupportedFeature(word, line, col)
            if upper in _KEYWORDS or upper in _FUNCTIONS:
                tokens.append(_Token("KEYWORD", upper, line, col))
            else:
                tokens.append(_Token("IDENT", word, line, col))
            i = end
            continue
        two = text[i:i + 2]
        if two in _PUNCT2:
            tokens.append(_Token("PUNCT", two, line, col))
            i += 2
            continue
        if ch in _PUNCT1:
            tokens.append(_Token("PUNCT", ch, line, col))
            i += 1
            continue
        err(f"unexpected character {ch!r}", i)
    tokens.append(_Token("EOF", None, line, 1))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.prefixes: dict[str, str] = {}
        self.visible: list[str] = []

    # -- token helpers ------------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise QuerySyntaxError(message, tok.line, tok.col)

    def unsupported(self, feature: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise UnsupportedFeature(feature, tok.line, tok.col)

    def expect_punct(self, value: str) -> _Token:
        tok = self.next()
        if tok.kind != "PUNCT" or tok.value != value:
            self.error(f"expected {value!r}", tok)
        return tok

    def expect_keyword(self, value: str) -> _Token:
        tok = self.next()
        if tok.kind != "KEYWORD" or tok.value != value:
            self.error(f"expected {value}", tok)
        return tok

    def at_keyword(self, *values: str) -> bool:
        tok = self.peek()
        return tok.kind == "KEYWORD" and tok.value in values

    def at_punct(self, *values: str) -> bool:
        tok = self.peek()
        return tok.kind == "PUNCT" and tok.value in values

    # -- terms --------------------------------------------------------------

    def expand_pname(self, tok: _Token) -> Iri:
        label, local = tok.value
        if label not in self.prefixes:
            self.error(f"undeclared prefix {label!r}", tok)
        try:
            return Iri(self.prefixes[label] + local)
        except TermError as exc:
            self.error(str(exc), tok)

    def see_var(self, name: str) -> Variable:
        if name not in self.visible:
            self.visible.append(name)
        return Variable(name)

    def parse_number_literal(self, text: str) -> Literal:
        if "e" in text or "E" in text:
            return Literal(text, datatype=XSD + "double")
        if "." in text:
            return Literal(text, datatype=XSD + "decimal")
        return Literal(text, datatype=XSD + "integer")

    def parse_term(self, *, allow_var=True) -> Term | Variable:
        tok = self.next()
        if tok.kind == "VAR":
            if not allow_var:
                self.error("variable not allowed here", tok)
            return self.see_var(tok.value)
        if tok.kind == "IRI":
            try:
                return Iri(tok.value)
            except TermError as exc:
                self.error(str(exc), tok)
        if tok.kind == "PNAME":
            return self.expand_pname(tok)
        if tok.kind == "NUMBER":
            return self.parse_number_literal(tok.value)
        if tok.kind == "KEYWORD" and tok.value in ("TRUE", "FALSE"):
            return Literal(tok.value.lower(), datatype=XSD + "boolean")
        if tok.kind == "STRING":
            lexical = tok.value
            if self.at_punct("@"):
                self.next()
                lang_tok = self.next()
                if lang_tok.kind not in ("IDENT", "KEYWORD"):
                    self.error("expected language tag", lang_tok)
                return Literal(lexical, language=str(lang_tok.value).lower()
                               if lang_tok.kind == "KEYWORD" else lang_tok.value)
            if self.at_punct("^^"):
                self.next()
                dt_tok = self.next()
                if dt_tok.kind == "IRI":
                    return Literal(lexical, datatype=dt_tok.value)
                if dt_tok.kind == "PNAME":
                    return Literal(lexical, datatype=self.expand_pname(dt_tok).value)
                self.error("expected datatype IRI", dt_tok)
            return Literal(lexical)
        if tok.kind == "PUNCT" and tok.value == "-" and self.peek().kind == "NUMBER":
            num = self.next()
            return self.parse_number_literal("-" + num.value)
        self.error("expected term", tok)

    # -- query --------------------------------------------------------------

    def parse_query(self) -> Query:
        while self.at_keyword("PREFIX"):
            self.next()
            tok = self.next()
            if tok.kind != "PNAME" or tok.value[1] != "":
                self.error("expected prefix label ending in ':'", tok)
            iri_tok = self.next()
            if iri_tok.kind != "IRI":
                self.error("expected namespace IRI", iri_tok)
            self.prefixes[tok.value[0]] = iri_tok.value

        self.expect_keyword("SELECT")
        distinct = False
        if self.at_keyword("DISTINCT"):
            self.next()
            distinct = True

        select_all = False
        select_items: list[str] = []
        aggregates: dict[str, Aggregate] = {}
        if self.at_punct("*"):
            self.next()
            select_all = True
        else:
            while True:
                tok = self.peek()
                if tok.kind == "VAR":
                    self.next()
                    select_items.append(tok.value)
                elif tok.kind == "PUNCT" and tok.value == "(":
                    self.next()
                    agg = self.parse_aggregate()
                    aggregates[agg.alias] = agg
                    select_items.append(agg.alias)
                else:
                    break
            if not select_items:
                self.error("empty projection")

        if self.at_keyword("WHERE"):
            self.next()
        pattern = self.parse_group(top=True)

        group_by: list[str] = []
        if self.at_keyword("GROUP"):
            self.next()
            self.expect_keyword("BY")
            while self.peek().kind == "VAR":
                group_by.append(self.next().value)
            if not group_by:
                self.error("GROUP BY needs at least one variable")

        order_by: list[OrderKey] = []
        if self.at_keyword("ORDER"):
            self.next()
            self.expect_keyword("BY")
            while True:
                if self.at_keyword("ASC", "DESC"):
                    desc = self.next().value == "DESC"
                    self.expect_punct("(")
                    expr = self.parse_expression()
                    self.expect_punct(")")
                    order_by.append(OrderKey(expr, desc))
                elif self.peek().kind == "VAR":
                    order_by.append(OrderKey(VarExpr(self.next().value), False))
                elif (
                    (self.peek().kind == "KEYWORD" and self.peek().value in _FUNCTIONS)
                    or self.peek().kind == "PNAME"
                    or self.at_punct("(")
                ):
                    order_by.append(OrderKey(self.parse_primary(), False))
                else:
                    break
            if not order_by:
                self.error("ORDER BY needs at least one key")

        limit = None
        offset = 0
        while self.at_keyword("LIMIT", "OFFSET"):
            kw = self.next().value
            tok = self.next()
            if tok.kind != "NUMBER" or not str(tok.value).isdigit():
                self.error(f"{kw} expects a non-negative integer", tok)
            if kw == "LIMIT":
                limit = int(tok.value)
            else:
                offset = int(tok.value)

        tok = self.peek()
        if tok.kind != "EOF":
            self.error("unexpected trailing content", tok)

        query = Query(
            prefixes=dict(self.prefixes),
            distinct=distinct,
            select_all=select_all,
            select_items=select_items,
            aggregates=aggregates,
            pattern=pattern,
            group_by=group_by,
            order_by=order_by,
            limit=limit,
            offset=offset,
            visible_vars=list(self.visible),
        )
        self._check_projection(query)
        return query

    def _check_projection(self, query: Query) -> None:
        if query.select_all:
            return
        visible = set(query.visible_vars)
        for item in query.select_items:
            if item in query.aggregates:
                agg = query.aggregates[item]
                if agg.arg is not None and agg.arg not in visible:
                    raise QuerySyntaxError(f"aggregate over unknown variable ?{agg.arg}")
            elif item not in visible:
                raise QuerySyntaxError(f"projected variable ?{item} is not visible in the pattern")
        if query.aggregates or query.group_by:
            keys = set(query.group_by)
            for item in query.select_items:
                if item not in query.aggregates and item not in keys:
                    raise QuerySyntaxError(
                        f"?{item} must be a GROUP BY key when aggregates are present"
                    )

    def parse_aggregate(self) -> Aggregate:
        tok = self.next()
        if not (tok.kind == "KEYWORD" and tok.value == "COUNT"):
            self.unsupported(f"projection expression {tok.value!r}", tok)
        self.expect_punct("(")
        distinct = False
        if self.at_keyword("DISTINCT"):
            self.next()
            distinct = True
        arg: str | None
        if self.at_punct("*"):
            self.next()
            arg = None
        else:
            var_tok = self.next()
            if var_tok.kind != "VAR":
                self.error("COUNT expects a variable or *", var_tok)
            arg = var_tok.value
        self.expect_punct(")")
        self.expect_keyword("AS")
        alias_tok = self.next()
        if alias_tok.kind != "VAR":
            self.error("expected alias variable", alias_tok)
        self.expect_punct(")")
        if alias_tok.value not in self.visible:
            self.visible.append(alias_tok.value)
        return Aggregate(alias=alias_tok.value, arg=arg, distinct=distinct)

    # -- group patterns -----------------------------------------------------

    def parse_group(self, top: bool = False, allow_nested: bool = True) -> GroupPattern:
        self.expect_punct("{")
        group = GroupPattern()
        bound_before_bind = set()
        while True:
            tok = self.peek()
            if tok.kind == "PUNCT" and tok.value == "}":
                self.next()
                break
            if tok.kind == "EOF":
                self.error("unterminated group pattern", tok)
            if tok.kind == "KEYWORD" and tok.value == "FILTER":
                self.next()
                group.filters.append(self.parse_constraint())
                continue
            if tok.kind == "KEYWORD" and tok.value == "BIND":
                self.next()
                self.expect_punct("(")
                expr = self.parse_expression()
                self.expect_keyword("AS")
                var_tok = self.next()
                if var_tok.kind != "VAR":
                    self.error("expected variable after AS", var_tok)
                if var_tok.value in bound_before_bind or any(
                    var_tok.value == name for _, name in group.binds
                ):
                    self.error(f"BIND would rebind ?{var_tok.value}", var_tok)
                self.expect_punct(")")
                self.see_var(var_tok.value)
                group.binds.append((expr, var_tok.value))
                continue
            if tok.kind == "KEYWORD" and tok.value == "OPTIONAL":
                if not allow_nested:
                    self.unsupported("nested OPTIONAL", tok)
                self.next()
                group.optionals.append(self.parse_group(allow_nested=False))
                continue
            if tok.kind == "KEYWORD" and tok.value == "SERVICE":
                if not allow_nested:
                    self.unsupported("nested SERVICE", tok)
                self.next()
                ep_tok = self.next()
                if ep_tok.kind == "IRI":
                    endpoint = Iri(ep_tok.value)
                elif ep_tok.kind == "PNAME":
                    endpoint = self.expand_pname(ep_tok)
                else:
                    self.error("SERVICE expects an endpoint IRI", ep_tok)
                sub = self.parse_group(allow_nested=False)
                if sub.filters or sub.binds:
                    self.unsupported("non-BGP content inside SERVICE", ep_tok)
                group.services.append(ServiceClause(endpoint=endpoint, patterns=sub.patterns))
                continue
            if tok.kind == "PUNCT" and tok.value == "{":
                self.unsupported("nested group / subquery", tok)
            self.parse_triples_block(group)
            for p in group.patterns:
                for t in (p.subject, p.predicate, p.object):
                    if isinstance(t, Variable):
                        bound_before_bind.add(t.name)
        return group

    def parse_triples_block(self, group: GroupPattern) -> None:
        subject = self.parse_term()
        if isinstance(subject, Literal):
            self.error("subject cannot be a literal")
        while True:
            predicate = self.parse_verb()
            # detect property-path operators right after the verb
            if self.at_punct("*", "+", "/", "|"):
                self.unsupported("property path")
            obj = self.parse_term()
            try:
                group.patterns.append(TriplePattern(subject, predicate, obj))
            except TermError as exc:
                self.error(str(exc))
            while self.at_punct(","):
                self.next()
                obj = self.parse_term()
                group.patterns.append(TriplePattern(subject, predicate, obj))
            if self.at_punct(";"):
                self.next()
                # a trailing ; before . or } ends the block
                if not (
                    self.at_punct(".", "}")
                    or self.at_keyword("FILTER", "BIND", "OPTIONAL", "SERVICE")
                ):
                    continue
            if self.at_punct("."):
                self.next()
            return

    def parse_verb(self) -> Iri | Variable:
        tok = self.peek()
        if tok.kind == "KEYWORD" and tok.value == "A":
            self.next()
            return Iri(RDF + "type")
        if tok.kind == "PUNCT" and tok.value == "^":
            self.unsupported("inverse property path", tok)
        term = self.parse_term()
        if isinstance(term, (Iri, Variable)):
            return term
        self.error("predicate must be an IRI or variable", tok)

    # -- constraints / expressions -----------------------------------------

    def parse_constraint(self) -> Expression:
        if self.at_punct("("):
            self.next()
            expr = self.parse_expression()
            self.expect_punct(")")
            return expr
        return self.parse_primary()

    def parse_expression(self) -> Expression:
        expr = self.parse_and()
        while self.at_punct("||"):
            self.next()
            expr = BoolOp("||", expr, self.parse_and())
        return expr

    def parse_and(self) -> Expression:
        expr = self.parse_relational()
        while self.at_punct("&&"):
            self.next()
            expr = BoolOp("&&", expr, self.parse_relational())
        return expr

    def parse_relational(self) -> Expression:
        left = self.parse_additive()
        if self.at_punct("=", "!=", "<", "<=", ">", ">="):
            op = self.next().value
            right = self.parse_additive()
            return Comparison(op, left, right)
        return left

    def parse_additive(self) -> Expression:
        expr = self.parse_multiplicative()
        while self.at_punct("+", "-"):
            op = self.next().value
            expr = Arith(op, expr, self.parse_multiplicative())
        return expr

    def parse_multiplicative(self) -> Expression:
        expr = self.parse_unary()
        while self.at_punct("*", "/"):
            op = self.next().value
            expr = Arith(op, expr, self.parse_unary())
        return expr

    def parse_unary(self) -> Expression:
        if self.at_punct("!"):
            self.next()
            return NotExpr(self.parse_unary())
        if self.at_punct("-"):
            self.next()
            return NegExpr(self.parse_unary())
        if self.at_punct("+"):
            self.next()
            return self.parse_unary()
        return self.parse_primary()

    def parse_primary(self) -> Expression:
        tok = self.peek()
        if tok.kind == "PUNCT" and tok.value == "(":
            self.next()
            expr = self.parse_expression()
            self.expect_punct(")")
            return expr
        if tok.kind == "VAR":
            self.next()
            self.see_var(tok.value)
            return VarExpr(tok.value)
        if tok.kind == "KEYWORD" and tok.value in _FUNCTIONS:
            self.next()
            name = "URI" if tok.value == "IRI" else tok.value
            return FuncCall(name, tuple(self.parse_args()))
        if tok.kind == "PNAME":
            nxt = self.tokens[self.pos + 1]
            if nxt.kind == "PUNCT" and nxt.value == "(":
                self.next()
                iri = self.expand_pname(tok)
                if iri.value not in CAST_DATATYPES:
                    self.unsupported(f"function {iri.value}", tok)
                return FuncCall(iri.value, tuple(self.parse_args()))
            return ConstExpr(self.parse_term(allow_var=False))
        if tok.kind in ("IRI", "STRING", "NUMBER") or (
            tok.kind == "KEYWORD" and tok.value in ("TRUE", "FALSE")
        ):
            return ConstExpr(self.parse_term(allow_var=False))
        self.error("expected expression", tok)

    def parse_args(self) -> list[Expression]:
        self.expect_punct("(")
        args = []
        if not self.at_punct(")"):
            args.append(self.parse_expression())
            while self.at_punct(","):
                self.next()
                args.append(self.parse_expression())
        self.expect_punct(")")
        return args


def parse_query(text: str) -> Query:
    """Parse a SELECT query in the supported subset."""
    return _Parser(text).parse_query()
