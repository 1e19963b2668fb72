"""Compare the numba and pure-numpy range-lookup kernels.

Measures raw lex_range throughput on sorted id-triple columns and end-to-end
predicate-bound matches on a Dataset. Run with KGFORGE_NUMBA=0 to force the
numpy path for the whole store as well.

    python3 benchmarks/bench_store.py --triples 1000000 --lookups 200000
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from kgforge.store import Dataset, TriplePattern
from kgforge.store.kernels import NUMBA_ENABLED, lex_range_numba, lex_range_numpy
from kgforge.terms import Iri, Variable


def build_columns(n: int, seed: int = 1):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, n // 50 + 1, n)
    b = rng.integers(0, 40, n)
    c = rng.integers(0, n // 10 + 1, n)
    perm = np.lexsort((c, b, a))
    return (
        np.ascontiguousarray(a[perm]),
        np.ascontiguousarray(b[perm]),
        np.ascontiguousarray(c[perm]),
    )


def bench_kernel(fn, cols, lookups: int, seed: int = 2) -> float:
    a, b, c = cols
    rng = np.random.default_rng(seed)
    ks = rng.integers(1, 4, lookups)
    v0s = rng.integers(0, int(a.max()) + 1, lookups)
    v1s = rng.integers(0, 40, lookups)
    v2s = rng.integers(0, int(c.max()) + 1, lookups)
    fn(a, b, c, 3, 0, 0, 0)  # warm-up / JIT
    start = time.perf_counter()
    total = 0
    for i in range(lookups):
        lo, hi = fn(a, b, c, int(ks[i]), int(v0s[i]), int(v1s[i]), int(v2s[i]))
        total += hi - lo
    elapsed = time.perf_counter() - start
    print(f"    checksum (matched rows): {total}")
    return elapsed


def bench_end_to_end(n_triples: int) -> None:
    preds = [f"urn:p{i}" for i in range(20)]
    lines = [
        f"<urn:thing_{i % (n_triples // 5)}> <{preds[i % 20]}> \"v{i}\" ."
        for i in range(n_triples)
    ]
    ds = Dataset()
    t0 = time.perf_counter()
    ds.load_graph_text("urn:bench", "\n".join(lines))
    ds.prepare()
    t1 = time.perf_counter()
    print(f"  load+index {n_triples} triples: {t1 - t0:.2f}s")
    pattern = TriplePattern(Variable("s"), Iri(preds[3]), Variable("o"))
    t2 = time.perf_counter()
    rows = sum(1 for _ in ds.match(pattern))
    t3 = time.perf_counter()
    print(f"  predicate-bound match: {rows} rows in {(t3 - t2) * 1000:.1f} ms")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--triples", type=int, default=1_000_000)
    parser.add_argument("--lookups", type=int, default=200_000)
    args = parser.parse_args(argv)

    print(f"numba available and enabled: {NUMBA_ENABLED}")
    cols = build_columns(args.triples)

    print(f"kernel comparison over {args.triples} sorted rows, {args.lookups} lookups:")
    print("  numpy searchsorted path:")
    t_np = bench_kernel(lex_range_numpy, cols, args.lookups)
    print(f"    {t_np:.3f}s  ({args.lookups / t_np / 1e3:.0f}k lookups/s)")
    if lex_range_numba is not None:
        print("  numba njit path:")
        t_nb = bench_kernel(lex_range_numba, cols, args.lookups)
        print(f"    {t_nb:.3f}s  ({args.lookups / t_nb / 1e3:.0f}k lookups/s)")
        print(f"  speedup: {t_np / t_nb:.2f}x")
    else:
        print("  numba path unavailable (KGFORGE_NUMBA=0 or numba missing)")

    print("end-to-end store (selected kernel path):")
    bench_end_to_end(args.triples)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
