"""Example-query catalog and entity-profile templates.

Both live as plain query files with a small `#+ key: value` header; the
default set ships inside the package and a config directory can override it.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from ..sparql import parse_query

PACKAGE_DIR = Path(__file__).resolve().parent
DEFAULT_QUERIES_DIR = PACKAGE_DIR / "queries"
DEFAULT_PROFILES_DIR = PACKAGE_DIR / "profiles"

CATEGORIES = ("reproduce-figures", "exploration", "federation")
PLACEHOLDER = "__ENTITY_IRI__"


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    title: str
    description: str
    category: str
    query: str


@dataclass(frozen=True)
class ProfileAspect:
    name: str
    query: str  # contains PLACEHOLDER exactly once

    def bind(self, iri: str) -> str:
        return self.query.replace(PLACEHOLDER, iri)


def _split_header(text: str) -> tuple[dict[str, str], str]:
    header: dict[str, str] = {}
    body_lines = []
    for line in text.splitlines(keepends=True):
        m = re.match(r"#\+\s*([a-z_]+)\s*:\s*(.*)\s*$", line)
        if m and not body_lines:
            header[m.group(1)] = m.group(2)
        else:
            body_lines.append(line)
    return header, "".join(body_lines)


def load_catalog(directory: str | Path | None = None) -> list[CatalogEntry]:
    directory = Path(directory) if directory else DEFAULT_QUERIES_DIR
    entries = []
    for path in sorted(directory.glob("*.rq")):
        header, body = _split_header(path.read_text(encoding="utf-8"))
        category = header.get("category", "exploration")
        if category not in CATEGORIES:
            raise ValueError(f"{path.name}: unknown category {category!r}")
        parse_query(body)  # every entry must be runnable
        entries.append(
            CatalogEntry(
                id=path.stem,
                title=header.get("title", path.stem),
                description=header.get("description", ""),
                category=category,
                query=body,
            )
        )
    return entries


def load_profiles(directory: str | Path | None = None) -> dict[str, list[ProfileAspect]]:
    directory = Path(directory) if directory else DEFAULT_PROFILES_DIR
    profiles: dict[str, list[ProfileAspect]] = {}
    for type_dir in sorted(p for p in directory.iterdir() if p.is_dir()):
        aspects = []
        for path in sorted(type_dir.glob("*.rq")):
            header, body = _split_header(path.read_text(encoding="utf-8"))
            if body.count(PLACEHOLDER) != 1:
                raise ValueError(f"{path}: placeholder must appear exactly once")
            parse_query(body)  # placeholder is itself a valid IRI
            name = header.get("aspect") or re.sub(r"^\d+_", "", path.stem)
            aspects.append(ProfileAspect(name=name, query=body))
        profiles[type_dir.name] = aspects
    return profiles
