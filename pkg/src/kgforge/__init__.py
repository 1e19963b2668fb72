"""kgforge: CSV-to-RDF knowledge graph construction and query serving."""

__version__ = "0.1.0"

from .terms import BlankNode, Iri, Literal, PrefixMap, Term, Triple, Variable, expand_curie

__all__ = [
    "BlankNode",
    "Iri",
    "Literal",
    "PrefixMap",
    "Term",
    "Triple",
    "Variable",
    "expand_curie",
    "__version__",
]
