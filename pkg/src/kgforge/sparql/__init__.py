from .syntax import Query, QuerySyntaxError, UnsupportedFeature, parse_query
from .eval import EvaluationError, ResultTable, Timeout, evaluate
from .federation import FederationError, ServiceClient
from .results import to_csv, to_json

__all__ = [
    "Query",
    "QuerySyntaxError",
    "UnsupportedFeature",
    "parse_query",
    "EvaluationError",
    "ResultTable",
    "Timeout",
    "evaluate",
    "FederationError",
    "ServiceClient",
    "to_csv",
    "to_json",
]
