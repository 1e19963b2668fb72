"""Namespace IRIs and the ontology terms the toolkit emits and queries."""
from __future__ import annotations

from .terms import Iri, PrefixMap

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"
REPR = "https://w3id.org/reproduceme/"
# The plan ontology prefix is used without a separator character; local names
# append directly to it. Kept byte-for-byte consistent between the corpus
# builder and the shipped example queries.
P_PLAN = "http://purl.org/net/p-plan"
PAV = "http://purl.org/pav/"
PROV = "http://www.w3.org/ns/prov#"
FABIO = "http://purl.org/spar/fabio/"
DOAP = "http://usefulinc.com/ns/doap#"

DEFAULT_PREFIXES = PrefixMap(
    {
        "rdf": RDF,
        "rdfs": RDFS,
        "xsd": XSD,
        "repr": REPR,
        "p-plan": P_PLAN,
        "pav": PAV,
        "prov": PROV,
        "fabio": FABIO,
        "doap": DOAP,
    }
)

RDF_TYPE = Iri(RDF + "type")
RDFS_LABEL = Iri(RDFS + "label")

FABIO_ARTICLE = Iri(FABIO + "Article")
FABIO_JOURNAL = Iri(FABIO + "Journal")
DOAP_GIT_REPOSITORY = Iri(DOAP + "GitRepository")
REPR_NOTEBOOK = Iri(REPR + "Notebook")
REPR_CELL = Iri(REPR + "Cell")
REPR_CELL_EXECUTION = Iri(REPR + "CellExecution")
REPR_FILE = Iri(REPR + "File")

PROV_SPECIALIZATION_OF = Iri(PROV + "specializationOf")
PROV_GENERALIZATION_OF = Iri(PROV + "generalizationOf")
PAV_RETRIEVED_FROM = Iri(PAV + "retrievedFrom")
P_PLAN_IS_STEP_OF_PLAN = Iri(P_PLAN + "isStepOfPlan")
P_PLAN_IS_VARIABLE_OF_PLAN = Iri(P_PLAN + "isVariableOfPlan")

REPR_KERNEL = Iri(REPR + "kernel")
REPR_LANGUAGE = Iri(REPR + "language")
REPR_TOTAL_CELLS = Iri(REPR + "total_cells")
REPR_DURATION = Iri(REPR + "duration")
REPR_PROCESSED = Iri(REPR + "processed")
REPR_URL = Iri(REPR + "url")

XSD_INTEGER = XSD + "integer"
XSD_DECIMAL = XSD + "decimal"
XSD_FLOAT = XSD + "float"
XSD_DOUBLE = XSD + "double"
XSD_BOOLEAN = XSD + "boolean"
