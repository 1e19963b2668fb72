from .dataset import Dataset, TriplePattern
from .kernels import NUMBA_ENABLED, warmup

__all__ = ["Dataset", "TriplePattern", "NUMBA_ENABLED", "warmup"]
