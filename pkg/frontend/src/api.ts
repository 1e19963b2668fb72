/** HTTP client for the query service.
 *
 * The query text is sent as the raw POST body, so what the user typed is
 * exactly what the service parses, byte for byte.
 */
import type { CatalogEntry, ProfileDoc, SparqlResults } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: string,
  ) {
    super(`HTTP ${status}: ${body}`);
  }
}

async function checked(res: Response): Promise<Response> {
  if (!res.ok) {
    throw new ApiError(res.status, await res.text());
  }
  return res;
}

export class ApiClient {
  constructor(public baseUrl: string) {}

  async runQuery(queryText: string, signal?: AbortSignal): Promise<SparqlResults> {
    const res = await checked(
      await fetch(`${this.baseUrl}/query`, {
        method: "POST",
        headers: { "Content-Type": "application/sparql-query" },
        body: queryText,
        signal,
      }),
    );
    return (await res.json()) as SparqlResults;
  }

  async fetchCatalog(category?: string): Promise<CatalogEntry[]> {
    const url = new URL(`${this.baseUrl}/catalog`);
    if (category) {
      url.searchParams.set("category", category);
    }
    const res = await checked(await fetch(url));
    return (await res.json()) as CatalogEntry[];
  }

  async fetchProfile(type: string, iri: string): Promise<ProfileDoc> {
    const url = new URL(`${this.baseUrl}/profile/${encodeURIComponent(type)}`);
    url.searchParams.set("iri", iri);
    const res = await checked(await fetch(url));
    return (await res.json()) as ProfileDoc;
  }

  async health(): Promise<{ status: string; triples: number }> {
    const res = await checked(await fetch(`${this.baseUrl}/health`));
    return (await res.json()) as { status: string; triples: number };
  }
}
