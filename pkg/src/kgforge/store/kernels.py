"""Range-lookup kernels over lexicographically sorted id-triple columns.

The hot operation is: given three sorted columns (a, b, c) and k bound
leading values, find the half-open row range [lo, hi) matching them. Two
implementations exist: a numba-compiled one and a pure-numpy one built on
searchsorted. KGFORGE_NUMBA=0 forces the numpy path; otherwise numba is
used when importable. `benchmarks/bench_store.py` compares the two.
"""
from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("KGFORGE_NUMBA", "auto").strip().lower()
_want_numba = _flag not in ("0", "false", "off", "no")

NUMBA_AVAILABLE = False
if _want_numba:
    try:
        from numba import njit

        NUMBA_AVAILABLE = True
    except ImportError:  # pragma: no cover - numba is a hard dependency here
        NUMBA_AVAILABLE = False

NUMBA_ENABLED = _want_numba and NUMBA_AVAILABLE


def lex_range_numpy(a: np.ndarray, b: np.ndarray, c: np.ndarray,
                    k: int, v0: int, v1: int, v2: int) -> tuple[int, int]:
    """Successive searchsorted narrowing; the reference implementation."""
    lo, hi = 0, a.shape[0]
    if k >= 1:
        lo, hi = lo + np.searchsorted(a[lo:hi], v0, "left"), lo + np.searchsorted(a[lo:hi], v0, "right")
    if k >= 2 and lo < hi:
        base = lo
        lo, hi = base + np.searchsorted(b[base:hi], v1, "left"), base + np.searchsorted(b[base:hi], v1, "right")
    if k >= 3 and lo < hi:
        base = lo
        lo, hi = base + np.searchsorted(c[base:hi], v2, "left"), base + np.searchsorted(c[base:hi], v2, "right")
    return int(lo), int(hi)


if NUMBA_ENABLED:

    @njit(cache=True)
    def _bounds(col, lo, hi, value):
        # leftmost index of value in col[lo:hi]
        left_lo, left_hi = lo, hi
        while left_lo < left_hi:
            mid = (left_lo + left_hi) // 2
            if col[mid] < value:
                left_lo = mid + 1
            else:
                left_hi = mid
        right_lo, right_hi = left_lo, hi
        while right_lo < right_hi:
            mid = (right_lo + right_hi) // 2
            if col[mid] <= value:
                right_lo = mid + 1
            else:
                right_hi = mid
        return left_lo, right_lo

    @njit(cache=True)
    def lex_range_numba(a, b, c, k, v0, v1, v2):
        lo = 0
        hi = a.shape[0]
        if k >= 1:
            lo, hi = _bounds(a, lo, hi, v0)
        if k >= 2 and lo < hi:
            lo, hi = _bounds(b, lo, hi, v1)
        if k >= 3 and lo < hi:
            lo, hi = _bounds(c, lo, hi, v2)
        return lo, hi

    lex_range = lex_range_numba
else:
    lex_range_numba = None
    lex_range = lex_range_numpy


def warmup() -> None:
    """Trigger JIT compilation so first queries aren't charged for it."""
    z = np.zeros(1, dtype=np.int64)
    lex_range(z, z, z, 3, 0, 0, 0)
