/** Wire types of the knowledge-graph service. */

export interface SparqlTermCell {
  type: "uri" | "literal" | "bnode";
  value: string;
  "xml:lang"?: string;
  datatype?: string;
}

export type SparqlBinding = Record<string, SparqlTermCell>;

export interface SparqlResults {
  head: { vars: string[] };
  results: { bindings: SparqlBinding[] };
}

export interface CatalogEntry {
  id: string;
  title: string;
  description: string;
  category: string;
  query: string;
}

export interface ProfileAspect {
  name: string;
  query: string;
  results?: SparqlResults;
  error?: string;
}

export interface ProfileDoc {
  type: string;
  iri: string;
  aspects: ProfileAspect[];
}
