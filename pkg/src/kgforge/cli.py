"""kgforge command line: fixtures, compile, materialize, load, query, serve."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__


def _add_fixtures(sub):
    p = sub.add_parser("fixtures", help="generate a synthetic corpus")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--scale", choices=["s", "m", "l"], default="s")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--reproduced-fraction", type=float, default=0.1)


def _add_compile(sub):
    p = sub.add_parser("compile", help="parse a mapping file and optionally export RML")
    p.add_argument("mapping", help="YARRRML mapping file (.yml)")
    p.add_argument("--emit-rml", metavar="OUT.nt", help="write the RML export here")


def _add_materialize(sub):
    p = sub.add_parser("materialize", help="run mappings over CSV sources")
    p.add_argument("--mappings", required=True, help="mapping file or directory")
    p.add_argument("--data", required=True, help="directory holding the CSV sources")
    p.add_argument("--out", required=True, help="output directory for .nt files")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", help="write the statistics report CSV here")
    p.add_argument("--table", action="store_true", help="print the report as a table")
    p.add_argument(
        "--suppress", action="append", default=[], metavar="FILE.csv:COLUMN",
        help="refuse to emit values of this column (repeatable)",
    )


def _add_load(sub):
    p = sub.add_parser("load", help="load a manifest into a store and print counts")
    p.add_argument("--manifest", required=True)
    p.add_argument("--include-heavy", action="store_true",
                   help="also load the four large per-cell graphs")


def _add_query(sub):
    p = sub.add_parser("query", help="evaluate a query against a manifest-loaded store")
    p.add_argument("--manifest", required=True)
    p.add_argument("--include-heavy", action="store_true")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--endpoint", action="append", default=[], metavar="IRI=URL",
                   help="allow-list a remote endpoint (repeatable)")
    p.add_argument("query", help="query text, or @file to read it from a file")


def _add_serve(sub):
    p = sub.add_parser(
        "serve", help="run the HTTP query service",
        description="Defaults come from KGFORGE_* environment variables; "
                    "flags override them.",
    )
    p.add_argument("--manifest", help="manifest to load at startup")
    p.add_argument("--include-heavy", action="store_true")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.add_argument("--row-cap", type=int)
    p.add_argument("--strict-cap", action="store_true")
    p.add_argument("--timeout", type=float)
    p.add_argument("--service-timeout", type=float)
    p.add_argument("--catalog-dir")
    p.add_argument("--profiles-dir")
    p.add_argument("--endpoint", action="append", default=[], metavar="IRI=URL")
    p.add_argument("--no-admin", action="store_true")


def _add_mock(sub):
    p = sub.add_parser("mock-endpoint", help="serve an N-Triples file as a SPARQL endpoint")
    p.add_argument("--data", required=True, help=".nt file to serve")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8198)


def _parse_endpoints(pairs: list[str]) -> dict[str, str]:
    out = {}
    for pair in pairs:
        iri, _, url = pair.partition("=")
        if not url:
            raise SystemExit(f"--endpoint expects IRI=URL, got {pair!r}")
        out[iri] = url
    return out


def _heavy_exclusions(include_heavy: bool) -> list[str]:
    from .fixtures import HEAVY_ENTITIES

    return [] if include_heavy else list(HEAVY_ENTITIES)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="kgforge")
    parser.add_argument("--version", action="version", version=f"kgforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for add in (_add_fixtures, _add_compile, _add_materialize, _add_load,
                _add_query, _add_serve, _add_mock):
        add(sub)
    args = parser.parse_args(argv)

    if args.command == "fixtures":
        from .fixtures import CorpusSpec, generate

        spec = CorpusSpec.for_scale(args.scale, seed=args.seed)
        spec.reproduced_fraction = args.reproduced_fraction
        manifest = generate(spec, args.out)
        print(f"corpus written to {args.out} "
              f"(seed={manifest['seed']}, scale={manifest['scale']})")
        return 0

    if args.command == "compile":
        from .rml import export_rml
        from .ntriples import write_ntriples
        from .yarrrml import parse_yarrrml

        doc = parse_yarrrml(Path(args.mapping).read_text(encoding="utf-8"))
        print(f"{args.mapping}: {len(doc.maps)} map(s), "
              f"{sum(len(m.pos) for m in doc.maps)} rule(s)")
        if args.emit_rml:
            with open(args.emit_rml, "w", encoding="utf-8", newline="\n") as fh:
                n = write_ntriples(export_rml(doc), fh)
            print(f"RML export: {n} triples -> {args.emit_rml}")
        return 0

    if args.command == "materialize":
        from .materializer import load_mapping_docs, materialize_all

        suppressed = []
        for item in args.suppress:
            src, _, col = item.partition(":")
            if not col:
                raise SystemExit(f"--suppress expects FILE.csv:COLUMN, got {item!r}")
            suppressed.append((src, col))
        docs = load_mapping_docs(args.mappings)
        report = materialize_all(
            docs, args.data, args.out, jobs=args.jobs, suppressed=suppressed
        )
        if args.report:
            Path(args.report).write_text(report.to_csv_text(), encoding="utf-8")
        if args.table or not args.report:
            print(report.to_table_text(), end="")
        return 0

    if args.command == "load":
        from .store import Dataset

        ds = Dataset()
        counts = ds.load_manifest(
            args.manifest, exclude_entities=_heavy_exclusions(args.include_heavy)
        )
        for graph, n in counts.items():
            print(f"{graph}: {n}")
        print(f"total distinct: {ds.total_distinct()}")
        return 0

    if args.command == "query":
        from .sparql import ServiceClient, evaluate, parse_query, to_csv, to_json
        from .store import Dataset

        text = args.query
        if text.startswith("@"):
            text = Path(text[1:]).read_text(encoding="utf-8")
        ds = Dataset()
        ds.load_manifest(
            args.manifest, exclude_entities=_heavy_exclusions(args.include_heavy)
        )
        ds.prepare()
        client = ServiceClient(allowlist=_parse_endpoints(args.endpoint))
        table = evaluate(ds, parse_query(text), federation=client)
        print(to_csv(table) if args.format == "csv" else to_json(table))
        return 0

    if args.command == "serve":
        import uvicorn

        from .service import ServiceConfig, create_app
        from .store import Dataset

        ds = Dataset()
        if args.manifest:
            counts = ds.load_manifest(
                args.manifest, exclude_entities=_heavy_exclusions(args.include_heavy)
            )
            print(f"loaded {len(counts)} graphs, {ds.total_distinct()} distinct triples")
        ds.prepare()
        config = ServiceConfig.from_env()
        if args.host is not None:
            config.host = args.host
        if args.port is not None:
            config.port = args.port
        if args.row_cap is not None:
            config.row_cap = args.row_cap
        if args.strict_cap:
            config.strict_cap = True
        if args.timeout is not None:
            config.query_timeout = args.timeout
        if args.service_timeout is not None:
            config.service_timeout = args.service_timeout
        if args.catalog_dir:
            config.catalog_dir = args.catalog_dir
        if args.profiles_dir:
            config.profiles_dir = args.profiles_dir
        if args.no_admin:
            config.admin_enabled = False
        config.endpoints.update(_parse_endpoints(args.endpoint))
        uvicorn.run(create_app(ds, config), host=config.host, port=config.port)
        return 0

    if args.command == "mock-endpoint":
        from .mock_endpoint import MockSparqlEndpoint
        from .store import Dataset

        ds = Dataset()
        n = ds.load_graph("urn:mock", args.data)
        ds.prepare()
        endpoint = MockSparqlEndpoint(ds, host=args.host, port=args.port)
        url = endpoint.start()
        print(f"serving {n} triples at {url} (Ctrl-C to stop)")
        try:
            import threading

            threading.Event().wait()
        except KeyboardInterrupt:
            endpoint.stop()
        return 0

    raise SystemExit(f"unknown command {args.command!r}")  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
