/** Editor session state and the standard prefix snippets. */
import type { SparqlResults } from "./types.js";

export const PREFIX_SNIPPETS = `PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>
PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>
PREFIX repr: <https://w3id.org/reproduceme/>
PREFIX p-plan: <http://purl.org/net/p-plan>
PREFIX pav: <http://purl.org/pav/>
PREFIX prov: <http://www.w3.org/ns/prov#>
PREFIX fabio: <http://purl.org/spar/fabio/>
PREFIX doap: <http://usefulinc.com/ns/doap#>
`;

export const DEFAULT_QUERY = `${PREFIX_SNIPPETS}
SELECT * WHERE {
  ?s ?p ?o
}
LIMIT 25
`;

export class EditorSession {
  text: string = DEFAULT_QUERY;
  lastResults: SparqlResults | null = null;

  constructor(public endpointBase: string) {}

  /** Load a catalog entry into the editor without running it. */
  load(queryText: string): void {
    this.text = queryText;
  }

  insertPrefixes(): void {
    if (!this.text.includes("PREFIX")) {
      this.text = PREFIX_SNIPPETS + this.text;
    }
  }
}
