"""Minimal SPARQL-protocol endpoint over an in-memory dataset.

Stands in for remote endpoints (the Wikidata-shaped federation target in
particular) during tests and demos: GET/POST with a `query` parameter,
responses in the standard JSON results format.
"""
from __future__ import annotations

import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .sparql import evaluate, parse_query, to_json
from .store import Dataset


class MockSparqlEndpoint:
    def __init__(self, dataset: Dataset, host: str = "127.0.0.1", port: int = 0):
        self.dataset = dataset
        outer = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args):  # quiet
                pass

            def _run(self, query_text: str | None):
                if not query_text:
                    self.send_error(400, "missing query parameter")
                    return
                try:
                    table = evaluate(outer.dataset, parse_query(query_text), timeout=10.0)
                except Exception as exc:
                    self.send_error(400, str(exc))
                    return
                body = to_json(table).encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "application/sparql-results+json")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

            def do_GET(self):
                params = parse_qs(urlparse(self.path).query)
                self._run(params.get("query", [None])[0])

            def do_POST(self):
                length = int(self.headers.get("Content-Length", 0))
                body = self.rfile.read(length).decode("utf-8")
                ctype = self.headers.get("Content-Type", "")
                if ctype.startswith("application/x-www-form-urlencoded"):
                    query = parse_qs(body).get("query", [None])[0]
                else:
                    query = body
                self._run(query)

        self._server = ThreadingHTTPServer((host, port), Handler)
        self._thread: threading.Thread | None = None

    @property
    def url(self) -> str:
        host, port = self._server.server_address[:2]
        return f"http://{host}:{port}/sparql"

    def start(self) -> str:
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)
        self._thread.start()
        return self.url

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()

    def __enter__(self) -> "MockSparqlEndpoint":
        self.start()
        return self

    def __exit__(self, *exc) -> None:
        self.stop()
