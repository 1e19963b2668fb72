"""In-memory dataset of named graphs with SPO/POS/OSP indexes.

Terms are dictionary-encoded to int64 ids; each index holds the id-triples
permuted into its column order and lexicographically sorted, so a pattern
with bound leading positions resolves to a contiguous row range. Loads take
the writer lock and replace (never mutate) index arrays, so queries that
captured an index keep a consistent snapshot.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from ..ntriples import ParseError, iter_triple_tokens, parse_term_token
from ..terms import Iri, Literal, Term, TermError, Triple, Variable, canonical_term
from . import kernels


@dataclass(frozen=True)
class TriplePattern:
    subject: Term | Variable
    predicate: Term | Variable
    object: Term | Variable

    def __post_init__(self):
        if isinstance(self.subject, Literal):
            raise TermError("pattern subject cannot be a literal")
        if not isinstance(self.predicate, (Iri, Variable)):
            raise TermError("pattern predicate must be an IRI or variable")


# index orders: which triple column feeds columns (a, b, c)
_ORDERS = {"spo": (0, 1, 2), "pos": (1, 2, 0), "osp": (2, 0, 1)}


class _IndexSet:
    """Immutable sorted views over one set of distinct id-triples."""

    def __init__(self, arr: np.ndarray):
        self.arr = arr
        self.size = arr.shape[0]
        self.columns: dict[str, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
        for name, (i, j, k) in _ORDERS.items():
            a, b, c = arr[:, i], arr[:, j], arr[:, k]
            perm = np.lexsort((c, b, a))
            self.columns[name] = (
                np.ascontiguousarray(a[perm]),
                np.ascontiguousarray(b[perm]),
                np.ascontiguousarray(c[perm]),
            )

    def lookup(self, s: int | None, p: int | None, o: int | None):
        """Rows matching the bound ids, as (s_col, p_col, o_col) slices."""
        bound = (s is not None, p is not None, o is not None)
        if bound == (True, True, True):
            order, vals, k = "spo", (s, p, o), 3
        elif bound == (True, True, False):
            order, vals, k = "spo", (s, p, 0), 2
        elif bound == (True, False, True):
            order, vals, k = "osp", (o, s, 0), 2
        elif bound == (True, False, False):
            order, vals, k = "spo", (s, 0, 0), 1
        elif bound == (False, True, True):
            order, vals, k = "pos", (p, o, 0), 2
        elif bound == (False, True, False):
            order, vals, k = "pos", (p, 0, 0), 1
        elif bound == (False, False, True):
            order, vals, k = "osp", (o, 0, 0), 1
        else:
            order, vals, k = "spo", (0, 0, 0), 0
        a, b, c = self.columns[order]
        lo, hi = kernels.lex_range(a, b, c, k, vals[0], vals[1], vals[2])
        i, j, l = _ORDERS[order]
        cols = [None, None, None]
        cols[i], cols[j], cols[l] = a[lo:hi], b[lo:hi], c[lo:hi]
        return cols[0], cols[1], cols[2]

    def count(self, s: int | None, p: int | None, o: int | None) -> int:
        return self.lookup(s, p, o)[0].shape[0]


def _dedup_rows(arr: np.ndarray) -> np.ndarray:
    if arr.shape[0] <= 1:
        return arr
    perm = np.lexsort((arr[:, 2], arr[:, 1], arr[:, 0]))
    srt = arr[perm]
    keep = np.empty(srt.shape[0], dtype=bool)
    keep[0] = True
    keep[1:] = np.any(srt[1:] != srt[:-1], axis=1)
    return srt[keep]


class Dataset:
    """Named graphs over shared term storage; default graph is their union."""

    def __init__(self, union_default: bool = True):
        self.union_default = union_default
        self._terms: list[Term] = []
        self._ids: dict[Term, int] = {}
        self._token_ids: dict[str, int] = {}
        self._graphs: dict[str, np.ndarray] = {}
        self._indexes: dict[str | None, _IndexSet] = {}
        self._lock = threading.Lock()

    # -- dictionary ---------------------------------------------------------

    def intern(self, term: Term) -> int:
        # string-typed and plain literals are one term (value semantics)
        term = canonical_term(term)
        tid = self._ids.get(term)
        if tid is None:
            tid = len(self._terms)
            self._terms.append(term)
            self._ids[term] = tid
        return tid

    def term_id(self, term: Term) -> int | None:
        return self._ids.get(canonical_term(term))

    def id_term(self, tid: int) -> Term:
        return self._terms[tid]

    def _intern_token(self, token: str, lineno: int) -> int:
        tid = self._token_ids.get(token)
        if tid is None:
            try:
                term = parse_term_token(token, lineno)
            except TermError as exc:
                raise ParseError(str(exc), lineno) from exc
            tid = self.intern(term)
            self._token_ids[token] = tid
        return tid

    # -- loading ------------------------------------------------------------

    def add_triples(self, graph_iri: str, triples: Iterable[Triple]) -> int:
        rows = [(self.intern(t.subject), self.intern(t.predicate), self.intern(t.object))
                for t in triples]
        return self._merge(graph_iri, rows)

    def load_graph(self, graph_iri: str, path: str | Path) -> int:
        """Load an N-Triples file into the named graph; returns new distinct triples.

        A parse error anywhere in the file leaves the graph unchanged.
        """
        text = Path(path).read_text(encoding="utf-8")
        return self.load_graph_text(graph_iri, text)

    def load_graph_text(self, graph_iri: str, text: str) -> int:
        rows: list[tuple[int, int, int]] = []
        for lineno, s_tok, p_tok, o_tok in iter_triple_tokens(text):
            rows.append(
                (
                    self._intern_token(s_tok, lineno),
                    self._intern_token(p_tok, lineno),
                    self._intern_token(o_tok, lineno),
                )
            )
        return self._merge(graph_iri, rows)

    def _merge(self, graph_iri: str, rows: list[tuple[int, int, int]]) -> int:
        arr = np.asarray(rows, dtype=np.int64).reshape(-1, 3)
        with self._lock:
            existing = self._graphs.get(graph_iri)
            before = 0 if existing is None else existing.shape[0]
            merged = arr if existing is None else np.vstack([existing, arr])
            merged = _dedup_rows(merged)
            self._graphs[graph_iri] = merged
            self._indexes = {}
            return merged.shape[0] - before

    def load_manifest(
        self,
        manifest_path: str | Path,
        exclude_entities: Iterable[str] = (),
    ) -> dict[str, int]:
        """Load (graph_iri, path) rows from a manifest CSV; returns per-graph counts.

        Paths are resolved relative to the manifest's directory. Rows whose
        file stem is in exclude_entities are skipped.
        """
        manifest_path = Path(manifest_path)
        base = manifest_path.parent
        excluded = set(exclude_entities)
        counts: dict[str, int] = {}
        for line in manifest_path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line == "graph_iri,path":
                continue
            graph_iri, _, rel = line.partition(",")
            if not rel:
                raise ValueError(f"malformed manifest line: {line!r}")
            path = Path(rel)
            if not path.is_absolute():
                path = base / path
            if path.stem in excluded:
                continue
            counts[graph_iri] = self.load_graph(graph_iri, path)
        return counts

    # -- inspection ---------------------------------------------------------

    def graph_names(self) -> list[str]:
        return list(self._graphs)

    def graph_size(self, graph_iri: str) -> int:
        arr = self._graphs.get(graph_iri)
        return 0 if arr is None else arr.shape[0]

    def total_distinct(self) -> int:
        return self._index_for(None).size

    def sum_graph_sizes(self) -> int:
        return sum(a.shape[0] for a in self._graphs.values())

    def triples(self, graph: str | None = None) -> Iterator[Triple]:
        arr = self._index_for(graph).arr
        terms = self._terms
        for s, p, o in arr.tolist():
            yield Triple(terms[s], terms[p], terms[o])

    # -- matching -----------------------------------------------------------

    def _index_for(self, graph: str | None) -> _IndexSet:
        with self._lock:
            idx = self._indexes.get(graph)
            if idx is not None:
                return idx
            if graph is None:
                arrays = list(self._graphs.values())
                if arrays:
                    arr = _dedup_rows(np.vstack(arrays))
                else:
                    arr = np.empty((0, 3), dtype=np.int64)
            else:
                arr = self._graphs.get(graph)
                if arr is None:
                    arr = np.empty((0, 3), dtype=np.int64)
            idx = _IndexSet(arr)
            self._indexes[graph] = idx
            return idx

    def _pattern_ids(self, pattern: TriplePattern):
        """(id or None per position, var name per position or None); None ids for vars."""
        ids: list[int | None] = []
        names: list[str | None] = []
        for term in (pattern.subject, pattern.predicate, pattern.object):
            if isinstance(term, Variable):
                ids.append(None)
                names.append(term.name)
            else:
                tid = self._ids.get(canonical_term(term))
                if tid is None:
                    return None, None  # term not in dictionary: no matches
                ids.append(tid)
                names.append(None)
        return ids, names

    def count_pattern(self, pattern: TriplePattern, graph: str | None = None) -> int:
        ids, _names = self._pattern_ids(pattern)
        if ids is None:
            return 0
        return self._index_for(graph).count(*ids)

    def prepare(self, graph: str | None = None) -> None:
        """Build indexes up front so first-query latency is load-time work."""
        kernels.warmup()
        self._index_for(graph)

    def match(self, pattern: TriplePattern, graph: str | None = None) -> Iterator[dict[str, Term]]:
        """Bindings for all triples matching the pattern in the selected graph(s)."""
        ids, names = self._pattern_ids(pattern)
        if ids is None:
            return
        cols = self._index_for(graph).lookup(*ids)
        n = cols[0].shape[0]
        if n == 0:
            return
        terms = self._terms

        # variable positions, deduplicated by name (repeated vars must agree)
        var_positions: dict[str, list[int]] = {}
        for pos, name in enumerate(names):
            if name is not None:
                var_positions.setdefault(name, []).append(pos)

        if all(len(p) == 1 for p in var_positions.values()):
            if not var_positions:
                for _ in range(n):
                    yield {}
                return
            keys = list(var_positions)
            decoded = [
                [terms[i] for i in cols[var_positions[k][0]].tolist()] for k in keys
            ]
            for vals in zip(*decoded):
                yield dict(zip(keys, vals))
            return

        col_lists = [c.tolist() for c in cols]
        for i in range(n):
            row = (col_lists[0][i], col_lists[1][i], col_lists[2][i])
            binding: dict[str, Term] = {}
            ok = True
            for name, positions in var_positions.items():
                first = row[positions[0]]
                if any(row[p] != first for p in positions[1:]):
                    ok = False
                    break
                binding[name] = terms[first]
            if ok:
                yield binding
