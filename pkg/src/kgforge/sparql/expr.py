"""Expression evaluation over solution rows.

Evaluation returns a Term or raises EvalTypeError. FILTER turns errors into
row elimination, BIND into an unbound variable; both policies live in the
evaluator pipeline, not here.
"""
from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from urllib.parse import quote

from ..terms import Iri, Literal, Term, TermError
from ..vocab import XSD
from .syntax import (
    Arith,
    BoolOp,
    Comparison,
    ConstExpr,
    Expression,
    FuncCall,
    NegExpr,
    NotExpr,
    VarExpr,
)

XSD_INTEGER = XSD + "integer"
XSD_DECIMAL = XSD + "decimal"
XSD_FLOAT = XSD + "float"
XSD_DOUBLE = XSD + "double"
XSD_BOOLEAN = XSD + "boolean"
XSD_STRING = XSD + "string"

_NUMERIC_DATATYPES = {XSD_INTEGER, XSD_DECIMAL, XSD_FLOAT, XSD_DOUBLE}
_INTEGER_RE = re.compile(r"[+-]?\d+\Z")
_DECIMAL_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)\Z")
_FLOAT_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\Z")

TRUE = Literal("true", datatype=XSD_BOOLEAN)
FALSE = Literal("false", datatype=XSD_BOOLEAN)


class EvalTypeError(Exception):
    """A SPARQL expression type error."""


def is_string_literal(term: Term) -> bool:
    return isinstance(term, Literal) and term.language is None and (
        term.datatype is None or term.datatype == XSD_STRING
    )


def numeric_value(term: Term):
    if not isinstance(term, Literal) or term.datatype not in _NUMERIC_DATATYPES:
        raise EvalTypeError(f"not a number: {term!r}")
    lex = term.lexical.strip()
    try:
        if term.datatype == XSD_INTEGER:
            return int(lex)
        if term.datatype == XSD_DECIMAL:
            return Decimal(lex)
        return float(lex)
    except (ValueError, InvalidOperation) as exc:
        raise EvalTypeError(f"bad numeric lexical {term.lexical!r}") from exc


def make_numeric(value) -> Literal:
    if isinstance(value, bool):
        raise EvalTypeError("boolean is not numeric")
    if isinstance(value, int):
        return Literal(str(value), datatype=XSD_INTEGER)
    if isinstance(value, Decimal):
        return Literal(format(value, "f"), datatype=XSD_DECIMAL)
    return Literal(repr(float(value)), datatype=XSD_DOUBLE)


def boolean(value: bool) -> Literal:
    return TRUE if value else FALSE


def effective_boolean(term: Term) -> bool:
    """SPARQL effective boolean value; raises on non-boolean-able terms."""
    if isinstance(term, Literal):
        if term.datatype == XSD_BOOLEAN:
            if term.lexical in ("true", "1"):
                return True
            if term.lexical in ("false", "0"):
                return False
            raise EvalTypeError(f"bad boolean lexical {term.lexical!r}")
        if term.datatype in _NUMERIC_DATATYPES:
            value = numeric_value(term)
            return value == value and value != 0  # NaN is false
        if is_string_literal(term) or term.language is not None:
            return len(term.lexical) > 0
    raise EvalTypeError(f"no boolean value for {term!r}")


def _compare(op: str, left: Term, right: Term) -> bool:
    if isinstance(left, Literal) and isinstance(right, Literal):
        l_num = left.datatype in _NUMERIC_DATATYPES
        r_num = right.datatype in _NUMERIC_DATATYPES
        if l_num and r_num:
            a, b = numeric_value(left), numeric_value(right)
            if isinstance(a, Decimal) and isinstance(b, float):
                a = float(a)
            if isinstance(b, Decimal) and isinstance(a, float):
                b = float(b)
            return _apply(op, a, b)
        if l_num != r_num:
            raise EvalTypeError("comparing number with non-number")
        if left.datatype == XSD_BOOLEAN and right.datatype == XSD_BOOLEAN:
            if op not in ("=", "!="):
                raise EvalTypeError("booleans are not ordered")
            return _apply(op, effective_boolean(left), effective_boolean(right))
        l_str = is_string_literal(left)
        r_str = is_string_literal(right)
        if l_str and r_str:
            return _apply(op, left.lexical, right.lexical)
        if left.language is not None and left.language == right.language:
            if op not in ("=", "!="):
                raise EvalTypeError("language-tagged literals are not ordered")
            return _apply(op, left.lexical, right.lexical)
        if op == "=" and left == right:
            return True
        if op == "!=" and left.datatype == right.datatype and left.language == right.language:
            return left.lexical != right.lexical
        raise EvalTypeError(f"incomparable literals {left!r} and {right!r}")
    if isinstance(left, Iri) and isinstance(right, Iri):
        if op == "=":
            return left == right
        if op == "!=":
            return left != right
        raise EvalTypeError("IRIs are not ordered")
    if op == "=":
        return left == right if type(left) is type(right) else False
    if op == "!=":
        return left != right if type(left) is type(right) else True
    raise EvalTypeError(f"cannot order {left!r} and {right!r}")


def _apply(op: str, a, b) -> bool:
    if op == "=":
        return a == b
    if op == "!=":
        return a != b
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    return a >= b


def _string_arg(term: Term) -> str:
    if isinstance(term, Literal) and (is_string_literal(term) or term.language is not None):
        return term.lexical
    raise EvalTypeError(f"expected a string literal, got {term!r}")


def _cast(datatype: str, term: Term) -> Literal:
    if isinstance(term, Iri) and datatype == XSD_STRING:
        return Literal(term.value)
    if not isinstance(term, Literal):
        raise EvalTypeError(f"cannot cast {term!r}")
    lex = term.lexical.strip()
    if datatype == XSD_INTEGER:
        if term.datatype in _NUMERIC_DATATYPES:
            return Literal(str(int(numeric_value(term))), datatype=XSD_INTEGER)
        if term.datatype == XSD_BOOLEAN:
            return Literal("1" if effective_boolean(term) else "0", datatype=XSD_INTEGER)
        if _INTEGER_RE.match(lex):
            return Literal(str(int(lex)), datatype=XSD_INTEGER)
        raise EvalTypeError(f"cannot cast {term.lexical!r} to integer")
    if datatype == XSD_DECIMAL:
        if term.datatype in _NUMERIC_DATATYPES or _DECIMAL_RE.match(lex):
            try:
                return Literal(format(Decimal(lex), "f"), datatype=XSD_DECIMAL)
            except InvalidOperation:
                raise EvalTypeError(f"cannot cast {term.lexical!r} to decimal")
        raise EvalTypeError(f"cannot cast {term.lexical!r} to decimal")
    if datatype in (XSD_FLOAT, XSD_DOUBLE):
        if term.datatype in _NUMERIC_DATATYPES or _FLOAT_RE.match(lex):
            try:
                return Literal(repr(float(lex)), datatype=datatype)
            except ValueError:
                raise EvalTypeError(f"cannot cast {term.lexical!r} to float")
        raise EvalTypeError(f"cannot cast {term.lexical!r} to float")
    raise EvalTypeError(f"unsupported cast to {datatype}")


def _call(name: str, args: list[Term]) -> Term:
    if name in (XSD_INTEGER, XSD_DECIMAL, XSD_FLOAT, XSD_DOUBLE):
        if len(args) != 1:
            raise EvalTypeError(f"{name} takes one argument")
        return _cast(name, args[0])
    if name == "STR":
        (a,) = args
        if isinstance(a, Iri):
            return Literal(a.value)
        if isinstance(a, Literal):
            return Literal(a.lexical)
        raise EvalTypeError("STR of a blank node")
    if name == "URI":
        (a,) = args
        if isinstance(a, Iri):
            return a
        if is_string_literal(a):
            try:
                return Iri(a.lexical)
            except TermError as exc:
                raise EvalTypeError(str(exc)) from exc
        raise EvalTypeError(f"URI expects a string, got {a!r}")
    if name == "CONCAT":
        return Literal("".join(_string_arg(a) for a in args))
    if name == "ENCODE_FOR_URI":
        (a,) = args
        return Literal(quote(_string_arg(a), safe=""))
    if name == "CONTAINS":
        a, b = args
        return boolean(_string_arg(b) in _string_arg(a))
    if name == "REGEX":
        if len(args) == 2:
            text, pattern = args
            flags = ""
        else:
            text, pattern, flags_term = args
            flags = _string_arg(flags_term)
        re_flags = re.IGNORECASE if "i" in flags else 0
        try:
            return boolean(re.search(_string_arg(pattern), _string_arg(text), re_flags) is not None)
        except re.error as exc:
            raise EvalTypeError(f"bad regex: {exc}") from exc
    if name == "LANG":
        (a,) = args
        if isinstance(a, Literal):
            return Literal(a.language or "")
        raise EvalTypeError("LANG of a non-literal")
    if name == "LANGMATCHES":
        tag, rng = (_string_arg(a) for a in args)
        if rng == "*":
            return boolean(tag != "")
        tag_l, rng_l = tag.lower(), rng.lower()
        return boolean(tag_l == rng_l or tag_l.startswith(rng_l + "-"))
    raise EvalTypeError(f"unknown function {name}")


def evaluate_expression(expr: Expression, row: dict[str, Term]) -> Term:
    if isinstance(expr, ConstExpr):
        return expr.term
    if isinstance(expr, VarExpr):
        value = row.get(expr.name)
        if value is None:
            raise EvalTypeError(f"unbound variable ?{expr.name}")
        return value
    if isinstance(expr, Comparison):
        return boolean(
            _compare(expr.op, evaluate_expression(expr.left, row),
                     evaluate_expression(expr.right, row))
        )
    if isinstance(expr, BoolOp):
        left = effective_boolean(evaluate_expression(expr.left, row))
        if expr.op == "&&":
            if not left:
                return FALSE
            return boolean(effective_boolean(evaluate_expression(expr.right, row)))
        if left:
            return TRUE
        return boolean(effective_boolean(evaluate_expression(expr.right, row)))
    if isinstance(expr, NotExpr):
        return boolean(not effective_boolean(evaluate_expression(expr.arg, row)))
    if isinstance(expr, NegExpr):
        return make_numeric(-numeric_value(evaluate_expression(expr.arg, row)))
    if isinstance(expr, Arith):
        a = numeric_value(evaluate_expression(expr.left, row))
        b = numeric_value(evaluate_expression(expr.right, row))
        if isinstance(a, Decimal) and isinstance(b, float):
            a = float(a)
        if isinstance(b, Decimal) and isinstance(a, float):
            b = float(b)
        if expr.op == "+":
            return make_numeric(a + b)
        if expr.op == "-":
            return make_numeric(a - b)
        if expr.op == "*":
            return make_numeric(a * b)
        if b == 0:
            raise EvalTypeError("division by zero")
        if isinstance(a, int) and isinstance(b, int):
            return make_numeric(Decimal(a) / Decimal(b))
        return make_numeric(a / b)
    if isinstance(expr, FuncCall):
        return _call(expr.name, [evaluate_expression(a, row) for a in expr.args])
    raise EvalTypeError(f"unknown expression node {expr!r}")
