from .corpus import SCALES, CorpusSpec, generate
from .oracle import OracleBundle, oracle
from .schema import ENTITIES, HEAVY_ENTITIES

__all__ = [
    "SCALES",
    "CorpusSpec",
    "generate",
    "OracleBundle",
    "oracle",
    "ENTITIES",
    "HEAVY_ENTITIES",
]
