/** Classify IRIs in result cells: graph-internal IRIs with a profile page
 * link there, other internal IRIs stay plain, everything else opens
 * externally. */
import { profileRoute } from "./router.js";

export const INTERNAL_NS = "https://w3id.org/reproduceme/";

// longest prefix wins; only these six local-name shapes have profile pages
const PROFILE_PREFIXES: ReadonlyArray<readonly [string, string]> = [
  ["repository_release_", ""],
  ["repository_file_", ""],
  ["requirement_file_", ""],
  ["notebook_code_style_", ""],
  ["notebook_markdown_", ""],
  ["notebook_feature_", ""],
  ["notebook_module_", ""],
  ["notebook_name_", ""],
  ["notebook_ast_", ""],
  ["markdown_feature_", ""],
  ["code_analysis_", ""],
  ["cell_feature_", ""],
  ["cell_module_", ""],
  ["cell_name_", ""],
  ["execution_", ""],
  ["repository_", "Repository"],
  ["notebook_", "Notebook"],
  ["article_", "Article"],
  ["journal_", "Journal"],
  ["author_", "Author"],
  ["mesh_", "MESH"],
  ["cell_", ""],
];

export type IriLink =
  | { kind: "profile"; profileType: string; route: string }
  | { kind: "internal" }
  | { kind: "external" };

export function classifyIri(iri: string): IriLink {
  if (!iri.startsWith(INTERNAL_NS)) {
    return { kind: "external" };
  }
  const local = iri.slice(INTERNAL_NS.length);
  for (const [prefix, profileType] of PROFILE_PREFIXES) {
    if (local.startsWith(prefix)) {
      if (profileType === "") {
        return { kind: "internal" };
      }
      return { kind: "profile", profileType, route: profileRoute(profileType, iri) };
    }
  }
  return { kind: "internal" };
}
