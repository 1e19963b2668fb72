"""HTTP facade: SPARQL protocol endpoint, catalog, profiles, administration."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from ..ntriples import ParseError
from ..sparql import (
    FederationError,
    QuerySyntaxError,
    ServiceClient,
    Timeout,
    evaluate,
    parse_query,
    to_csv,
    to_json,
)
from ..sparql.eval import ResultTable
from ..sparql.results import to_document
from ..store import Dataset
from .catalog import CatalogEntry, ProfileAspect, load_catalog, load_profiles

JSON_MEDIA = "application/sparql-results+json"
CSV_MEDIA = "text/csv"


@dataclass
class ServiceConfig:
    row_cap: int = 100_000
    strict_cap: bool = False
    query_timeout: float = 30.0
    service_timeout: float = 10.0
    endpoints: dict[str, str] = field(default_factory=dict)  # allow-list IRI -> URL
    catalog_dir: str | Path | None = None
    profiles_dir: str | Path | None = None
    admin_enabled: bool = True
    port: int = 8080
    host: str = "127.0.0.1"

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> "ServiceConfig":
        """Build a config from KGFORGE_* environment variables.

        KGFORGE_ENDPOINTS is a comma-separated list of IRI=URL pairs.
        """
        import os

        env = os.environ if env is None else env
        config = cls()
        if "KGFORGE_PORT" in env:
            config.port = int(env["KGFORGE_PORT"])
        if "KGFORGE_HOST" in env:
            config.host = env["KGFORGE_HOST"]
        if "KGFORGE_ROW_CAP" in env:
            config.row_cap = int(env["KGFORGE_ROW_CAP"])
        if "KGFORGE_STRICT_CAP" in env:
            config.strict_cap = env["KGFORGE_STRICT_CAP"] not in ("0", "false", "")
        if "KGFORGE_QUERY_TIMEOUT" in env:
            config.query_timeout = float(env["KGFORGE_QUERY_TIMEOUT"])
        if "KGFORGE_SERVICE_TIMEOUT" in env:
            config.service_timeout = float(env["KGFORGE_SERVICE_TIMEOUT"])
        if "KGFORGE_CATALOG_DIR" in env:
            config.catalog_dir = env["KGFORGE_CATALOG_DIR"]
        if "KGFORGE_PROFILES_DIR" in env:
            config.profiles_dir = env["KGFORGE_PROFILES_DIR"]
        if "KGFORGE_ADMIN" in env:
            config.admin_enabled = env["KGFORGE_ADMIN"] not in ("0", "false", "")
        for pair in env.get("KGFORGE_ENDPOINTS", "").split(","):
            iri, _, url = pair.partition("=")
            if url:
                config.endpoints[iri.strip()] = url.strip()
        return config


def create_app(
    dataset: Dataset | None = None,
    config: ServiceConfig | None = None,
) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="kgforge", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.dataset = dataset or Dataset()
    app.state.config = config
    app.state.catalog = load_catalog(config.catalog_dir)
    app.state.profiles = load_profiles(config.profiles_dir)
    app.state.client = ServiceClient(
        allowlist=config.endpoints, timeout=config.service_timeout
    )

    def run_query(text: str, fmt: str | None, accept: str) -> Response:
        ds: Dataset = app.state.dataset  # snapshot for this request
        try:
            query = parse_query(text)
        except QuerySyntaxError as exc:
            return PlainTextResponse(str(exc), status_code=400)
        try:
            table = evaluate(
                ds, query, federation=app.state.client, timeout=config.query_timeout
            )
        except Timeout as exc:
            return PlainTextResponse(str(exc), status_code=504)
        except FederationError as exc:
            return PlainTextResponse(str(exc), status_code=500)
        except Exception as exc:
            return PlainTextResponse(f"evaluation error: {exc}", status_code=500)

        truncated = False
        if len(table.rows) > config.row_cap:
            if config.strict_cap:
                return PlainTextResponse(
                    f"result exceeds row cap of {config.row_cap}", status_code=413
                )
            table = ResultTable(table.variables, table.rows[: config.row_cap], table.ordered)
            truncated = True

        headers = {"X-Row-Truncated": "true"} if truncated else {}
        want_csv = fmt == "csv" or (fmt is None and CSV_MEDIA in accept)
        if want_csv:
            return Response(to_csv(table), media_type=CSV_MEDIA, headers=headers)
        return Response(to_json(table), media_type=JSON_MEDIA, headers=headers)

    @app.get("/query")
    def query_get(request: Request):
        params = request.query_params
        text = params.get("query")
        if text is None:
            return PlainTextResponse("missing query parameter", status_code=400)
        return run_query(text, params.get("format"), request.headers.get("accept", ""))

    @app.post("/query")
    async def query_post(request: Request):
        ctype = request.headers.get("content-type", "")
        fmt = request.query_params.get("format")
        if ctype.startswith("application/x-www-form-urlencoded"):
            form = await request.form()
            text = form.get("query")
            fmt = fmt or form.get("format")
        else:
            text = (await request.body()).decode("utf-8")
        if not text:
            return PlainTextResponse("missing query", status_code=400)
        return run_query(text, fmt, request.headers.get("accept", ""))

    @app.get("/catalog")
    def catalog(category: str | None = None):
        entries: list[CatalogEntry] = app.state.catalog
        if category is not None:
            entries = [e for e in entries if e.category == category]
        return [
            {
                "id": e.id,
                "title": e.title,
                "description": e.description,
                "category": e.category,
                "query": e.query,
            }
            for e in entries
        ]

    @app.get("/profile/{entity_type}")
    def profile(entity_type: str, iri: str):
        profiles: dict[str, list[ProfileAspect]] = app.state.profiles
        if entity_type not in profiles:
            return JSONResponse(
                {"error": f"unknown profile type {entity_type!r}",
                 "known": sorted(profiles)},
                status_code=404,
            )
        ds: Dataset = app.state.dataset
        aspects = []
        for aspect in profiles[entity_type]:
            text = aspect.bind(iri)
            try:
                table = evaluate(
                    ds, parse_query(text),
                    federation=app.state.client, timeout=config.query_timeout,
                )
                aspects.append(
                    {"name": aspect.name, "query": text, "results": to_document(table)}
                )
            except Exception as exc:  # per-aspect failure does not fail the bundle
                aspects.append({"name": aspect.name, "query": text, "error": str(exc)})
        return {"type": entity_type, "iri": iri, "aspects": aspects}

    @app.post("/admin/load")
    async def admin_load(request: Request):
        if not config.admin_enabled:
            return PlainTextResponse("administration disabled", status_code=403)
        body = await request.json()
        manifest = body.get("manifest")
        exclude = body.get("exclude", [])
        if not manifest:
            return PlainTextResponse("missing manifest path", status_code=400)
        fresh = Dataset()
        try:
            counts = fresh.load_manifest(manifest, exclude_entities=exclude)
        except (OSError, ParseError, ValueError) as exc:
            return JSONResponse(
                {"error": str(exc), "manifest": manifest}, status_code=409
            )
        fresh.prepare()
        app.state.dataset = fresh  # atomic swap; older snapshots keep serving
        return {"graphs": counts, "total_distinct": fresh.total_distinct()}

    @app.get("/health")
    def health():
        ds: Dataset = app.state.dataset
        return {
            "status": "ok",
            "graphs": len(ds.graph_names()),
            "triples": ds.sum_graph_sizes(),
        }

    return app
