/** Application wiring against the fixture-backed service. */
import { beforeEach, describe, expect, inject, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/main.js";

const base = inject("baseUrl");

function buildDom(): void {
  document.body.innerHTML = `
    <input id="endpoint" />
    <section id="page-query">
      <textarea id="query-text"></textarea>
      <button id="run">Run</button>
      <button id="prefixes">Prefixes</button>
      <span id="status"></span>
      <div id="results"></div>
    </section>
    <section id="page-catalog" hidden><div id="catalog-list"></div></section>
    <section id="page-profile" hidden><div id="profile-view"></div></section>
  `;
  window.location.hash = "";
}

function makeApp(): App {
  const app = new App();
  app.api = new ApiClient(base);
  app.session.endpointBase = base;
  app.start();
  return app;
}

describe("App", () => {
  beforeEach(buildDom);

  it("selecting a catalog entry fills the editor without running it", async () => {
    const app = makeApp();
    window.location.hash = "#/catalog";
    await app.route();
    const button = document.querySelector(
      "button[data-entry-id='ten_reproduced_notebooks']",
    ) as HTMLButtonElement;
    expect(button).toBeTruthy();
    button.click();

    const entries = await app.api.fetchCatalog();
    const entry = entries.find((e) => e.id === "ten_reproduced_notebooks")!;
    expect(app.session.text).toBe(entry.query);
    // nothing ran yet
    expect(document.getElementById("results")!.children).toHaveLength(0);

    await app.route();
    const textarea = document.getElementById("query-text") as HTMLTextAreaElement;
    expect(textarea.value).toBe(entry.query);
  });

  it("run renders the result table; a later parse error keeps it visible", async () => {
    const app = makeApp();
    app.session.load("SELECT * WHERE { ?s ?p ?o } LIMIT 4");
    await app.runCurrentQuery();
    const results = document.getElementById("results")!;
    expect(results.querySelectorAll("tbody tr")).toHaveLength(4);

    app.session.load("SELECT * WHERE {");
    await app.runCurrentQuery();
    expect(results.querySelector(".error-box")).toBeTruthy();
    expect(results.querySelectorAll("tbody tr")).toHaveLength(4);
  });

  it("profile route renders aspect sections", async () => {
    const app = makeApp();
    const table = await app.api.runQuery(
      "PREFIX doap: <http://usefulinc.com/ns/doap#>\n" +
        "SELECT ?r WHERE { ?r a doap:GitRepository } LIMIT 1",
    );
    const iri = table.results.bindings[0]!["r"]!.value;
    window.location.hash = `#/profile/Repository?iri=${encodeURIComponent(iri)}`;
    await app.route();
    const view = document.getElementById("profile-view")!;
    expect(view.querySelectorAll("section.aspect").length).toBeGreaterThanOrEqual(4);
  });

  it("unknown profile type shows an error with a catalog link", async () => {
    const app = makeApp();
    window.location.hash = "#/profile/Gene?iri=urn%3Ax";
    await app.route();
    const view = document.getElementById("profile-view")!;
    expect(view.querySelector(".error-box")).toBeTruthy();
    expect(view.querySelector("a[href='#/catalog']")).toBeTruthy();
  });
});
