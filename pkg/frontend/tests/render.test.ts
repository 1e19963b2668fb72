import { describe, expect, it } from "vitest";

import { renderCatalog, renderProfile, renderResultsTable } from "../src/render.js";
import type { CatalogEntry, ProfileDoc, SparqlResults } from "../src/types.js";

const RESULTS: SparqlResults = {
  head: { vars: ["s", "label", "ext"] },
  results: {
    bindings: [
      {
        s: { type: "uri", value: "https://w3id.org/reproduceme/notebook_1" },
        label: { type: "literal", value: "analysis 1.ipynb" },
        ext: { type: "uri", value: "https://github.com/u/r" },
      },
      {
        s: { type: "uri", value: "https://w3id.org/reproduceme/notebook_2" },
        label: { type: "literal", value: "മലയാളം", "xml:lang": "ml" },
      },
    ],
  },
};

describe("renderResultsTable", () => {
  it("renders headers, rows, and typed links", () => {
    const el = renderResultsTable(RESULTS);
    const headers = [...el.querySelectorAll("th")].map((th) => th.textContent);
    expect(headers).toEqual(["s", "label", "ext"]);
    expect(el.querySelectorAll("tbody tr")).toHaveLength(2);

    const internal = el.querySelector("a.iri.internal") as HTMLAnchorElement;
    expect(internal.getAttribute("href")).toContain("#/profile/Notebook?iri=");

    const external = el.querySelector("a.iri.external") as HTMLAnchorElement;
    expect(external.target).toBe("_blank");
    expect(external.getAttribute("href")).toBe("https://github.com/u/r");
  });

  it("marks unbound cells and shows the row count", () => {
    const el = renderResultsTable(RESULTS);
    expect(el.querySelectorAll("td.unbound")).toHaveLength(1);
    expect(el.querySelector(".row-count")?.textContent).toBe("2 rows");
  });

  it("renders an empty result with headers and a 0 rows state", () => {
    const el = renderResultsTable({
      head: { vars: ["a", "b"] },
      results: { bindings: [] },
    });
    expect([...el.querySelectorAll("th")]).toHaveLength(2);
    expect(el.querySelector(".row-count")?.textContent).toBe("0 rows");
  });
});

describe("renderCatalog", () => {
  const entries: CatalogEntry[] = [
    { id: "one", title: "First", description: "d1", category: "exploration", query: "Q1" },
    { id: "two", title: "Second", description: "d2", category: "federation", query: "Q2" },
  ];

  it("groups by category and fires the selection callback", () => {
    let selected: CatalogEntry | null = null;
    const el = renderCatalog(entries, (entry) => {
      selected = entry;
    });
    expect(el.querySelectorAll("section.catalog-group")).toHaveLength(2);
    const button = el.querySelector(
      "button[data-entry-id='two']",
    ) as HTMLButtonElement;
    button.click();
    expect(selected).toMatchObject({ id: "two", query: "Q2" });
  });

  it("shows an empty state", () => {
    const el = renderCatalog([], () => {});
    expect(el.querySelector(".empty")).toBeTruthy();
  });
});

describe("renderProfile", () => {
  const doc: ProfileDoc = {
    type: "Repository",
    iri: "https://w3id.org/reproduceme/repository_1",
    aspects: [
      {
        name: "metadata",
        query: "SELECT ...",
        results: {
          head: { vars: ["property", "value"] },
          results: {
            bindings: [
              {
                property: { type: "uri", value: "https://w3id.org/reproduceme/url" },
                value: { type: "literal", value: "https://github.com/u/r" },
              },
            ],
          },
        },
      },
      { name: "notebooks", query: "SELECT ...", results: { head: { vars: ["n"] }, results: { bindings: [] } } },
      { name: "broken", query: "SELECT ...", error: "boom" },
    ],
  };

  it("renders every aspect with its query text attached", () => {
    const el = renderProfile(doc);
    const sections = [...el.querySelectorAll("section.aspect")];
    expect(sections.map((s) => (s as HTMLElement).dataset["aspect"])).toEqual([
      "metadata",
      "notebooks",
      "broken",
    ]);
    expect(el.querySelectorAll("pre.aspect-query")).toHaveLength(3);
    expect(el.querySelector(".error-box")?.textContent).toContain("boom");
  });
});
