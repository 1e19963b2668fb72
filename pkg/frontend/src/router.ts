/** Hash-based routes; query pages are deep-linkable with the text encoded. */

export type Route =
  | { page: "query"; query?: string }
  | { page: "catalog" }
  | { page: "profile"; type: string; iri: string };

export function queryRoute(query?: string): string {
  if (!query) {
    return "#/query";
  }
  return `#/query?q=${encodeURIComponent(query)}`;
}

export function catalogRoute(): string {
  return "#/catalog";
}

export function profileRoute(type: string, iri: string): string {
  return `#/profile/${encodeURIComponent(type)}?iri=${encodeURIComponent(iri)}`;
}

export function parseHash(hash: string): Route {
  const raw = hash.startsWith("#") ? hash.slice(1) : hash;
  const [path, queryString = ""] = splitOnce(raw, "?");
  const params = new URLSearchParams(queryString);
  const parts = path.split("/").filter((p) => p.length > 0);
  if (parts[0] === "catalog") {
    return { page: "catalog" };
  }
  if (parts[0] === "profile" && parts.length >= 2) {
    const iri = params.get("iri");
    if (iri) {
      return { page: "profile", type: decodeURIComponent(parts[1]!), iri };
    }
  }
  const q = params.get("q");
  return { page: "query", query: q ?? undefined };
}

function splitOnce(text: string, sep: string): [string, string?] {
  const at = text.indexOf(sep);
  if (at < 0) {
    return [text];
  }
  return [text.slice(0, at), text.slice(at + 1)];
}
