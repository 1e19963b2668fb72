"""Engine-vs-oracle fuzz: random small datasets, random subset queries.

Row multisets must agree; when ORDER BY is present the sequence of sort-key
tuples must agree as well (row order inside a tie group is the documented
stable-scan rule and may differ from the oracle's).
"""
import random
import time

from kgforge.sparql import evaluate, parse_query
from kgforge.sparql.syntax import OrderKey
from kgforge.store import Dataset
from kgforge.terms import Iri, Literal, Triple
from kgforge.vocab import XSD

from .naive_engine import NaiveError, _rank, _value, naive_evaluate

N_CASES = 500

_SUBJECTS = [f"urn:s{k}" for k in range(6)]
_PREDS = [f"urn:p{k}" for k in range(4)]
_IRI_OBJS = [f"urn:o{k}" for k in range(6)]
_LITERALS = ["a", "b", "abc", "x y", "1", "2", "10", "-3", "2.5", ""]
_VARS = ["v0", "v1", "v2", "v3"]

_PROLOGUE = "PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>\n"


def _random_triples(rng: random.Random) -> list[Triple]:
    out = []
    for _ in range(rng.randint(5, 30)):
        s = Iri(rng.choice(_SUBJECTS))
        p = Iri(rng.choice(_PREDS))
        roll = rng.random()
        if roll < 0.5:
            o = Iri(rng.choice(_IRI_OBJS))
        elif roll < 0.85:
            o = Literal(rng.choice(_LITERALS))
        else:
            o = Literal(str(rng.randint(-3, 12)), datatype=XSD + "integer")
        out.append(Triple(s, p, o))
    # de-dup like the store does
    return list(dict.fromkeys(out))


def _term_text(rng: random.Random, kind: str) -> str:
    if kind == "s":
        return f"<{rng.choice(_SUBJECTS)}>"
    if kind == "p":
        return f"<{rng.choice(_PREDS)}>"
    roll = rng.random()
    if roll < 0.45:
        return f"<{rng.choice(_IRI_OBJS)}>"
    if roll < 0.8:
        lit = rng.choice(_LITERALS).replace("\\", "").replace('"', "")
        return f'"{lit}"'
    return str(rng.randint(-3, 12))


def _random_query(rng: random.Random) -> tuple[str, bool]:
    patterns = []
    used_vars: list[str] = []

    def var() -> str:
        name = rng.choice(_VARS)
        if name not in used_vars:
            used_vars.append(name)
        return f"?{name}"

    for _ in range(rng.randint(1, 3)):
        s = var() if rng.random() < 0.7 else _term_text(rng, "s")
        p = var() if rng.random() < 0.2 else _term_text(rng, "p")
        o = var() if rng.random() < 0.6 else _term_text(rng, "o")
        patterns.append(f"  {s} {p} {o} .")
    if not used_vars:
        patterns.append(f"  {var()} {var()} {var()} .")

    filters = []
    if rng.random() < 0.55 and used_vars:
        v = rng.choice(used_vars)
        cmp_op = rng.choice(["=", "!=", "<", "<=", ">", ">="])
        k = rng.randint(-3, 12)
        form = rng.randrange(6)
        if form == 0:
            filters.append(f"  FILTER(xsd:integer(?{v}) {cmp_op} {k})")
        elif form == 1:
            filters.append(f"  FILTER(xsd:float(?{v}) {cmp_op} {k}.5)")
        elif form == 2:
            filters.append(f"  FILTER(?{v} = {_term_text(rng, 'o')})")
        elif form == 3:
            sub = rng.choice(["a", "b", "x", "1"])
            filters.append(f'  FILTER(CONTAINS(STR(?{v}), "{sub}"))')
        elif form == 4:
            filters.append(f'  FILTER(REGEX(STR(?{v}), "[ab1]"))')
        else:
            filters.append(
                f"  FILTER(xsd:integer(?{v}) > 0 && xsd:integer(?{v}) < 9)"
            )

    if rng.random() < 0.3:
        projection = "*"
        proj_vars = used_vars
    else:
        k = rng.randint(1, len(used_vars))
        proj_vars = rng.sample(used_vars, k)
        projection = " ".join(f"?{v}" for v in proj_vars)
    distinct = "DISTINCT " if rng.random() < 0.3 else ""

    order = ""
    ordered = False
    if rng.random() < 0.5 and proj_vars:
        ordered = True
        keys = []
        for v in rng.sample(proj_vars, rng.randint(1, min(2, len(proj_vars)))):
            style = rng.randrange(4)
            if style == 0:
                keys.append(f"?{v}")
            elif style == 1:
                keys.append(f"DESC(?{v})")
            elif style == 2:
                keys.append(f"DESC(xsd:float(?{v}))")
            else:
                keys.append(f"ASC(STR(?{v}))")
        order = "ORDER BY " + " ".join(keys)

    text = (
        _PROLOGUE
        + f"SELECT {distinct}{projection} WHERE {{\n"
        + "\n".join(patterns + filters)
        + "\n}\n"
        + order
    )
    return text, ordered


def _multiset(rows):
    return sorted(
        tuple("" if t is None else str(t) for t in row) for row in rows
    )


def _key_sequence(rows, variables, order_keys: list[OrderKey]):
    out = []
    for row in rows:
        as_dict = {v: t for v, t in zip(variables, row) if t is not None}
        ranks = []
        for key in order_keys:
            try:
                ranks.append(_rank(_value(key.expr, as_dict)))
            except NaiveError:
                ranks.append((0,))
        out.append(tuple(ranks))
    return out


def test_fuzz_engine_matches_naive_oracle():
    started = time.perf_counter()
    for case in range(N_CASES):
        rng = random.Random(10_000 + case)
        triples = _random_triples(rng)
        text, ordered = _random_query(rng)
        query = parse_query(text)

        ds = Dataset()
        ds.add_triples("urn:g", triples)
        table = evaluate(ds, query, timeout=20.0)
        naive_vars, naive_rows = naive_evaluate(list(ds.triples()), query)

        assert table.variables == naive_vars, text
        assert _multiset(table.rows) == _multiset(naive_rows), (
            f"case {case} multiset mismatch\n{text}"
        )
        if ordered:
            got_keys = _key_sequence(table.rows, table.variables, query.order_by)
            want_keys = _key_sequence(naive_rows, naive_vars, query.order_by)
            assert got_keys == want_keys, f"case {case} key order mismatch\n{text}"

            if table.rows:
                k = rng.randint(1, len(table.rows))
                limited = evaluate(ds, parse_query(text + f"\nLIMIT {k}"), timeout=20.0)
                lim_keys = _key_sequence(limited.rows, limited.variables, query.order_by)
                assert lim_keys == got_keys[:k], f"case {case} limit prefix\n{text}"
    elapsed = time.perf_counter() - started
    assert elapsed < 300, f"fuzz took {elapsed:.1f}s, budget is 300s"
