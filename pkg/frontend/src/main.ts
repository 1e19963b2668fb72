/** Application shell: wires the editor, catalog, and profile pages together. */
import { ApiClient, ApiError } from "./api.js";
import { EditorSession } from "./editor.js";
import { parseHash, queryRoute } from "./router.js";
import {
  renderCatalog,
  renderError,
  renderProfile,
  renderResultsTable,
} from "./render.js";

function defaultEndpoint(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("endpoint");
  return fromQuery ?? window.location.origin;
}

export class App {
  api: ApiClient;
  session: EditorSession;
  private inflight: AbortController | null = null;

  constructor(private root: Document = document) {
    const endpoint = defaultEndpoint();
    this.api = new ApiClient(endpoint);
    this.session = new EditorSession(endpoint);
  }

  start(): void {
    const endpointInput = this.byId<HTMLInputElement>("endpoint");
    endpointInput.value = this.session.endpointBase;
    endpointInput.addEventListener("change", () => {
      this.session.endpointBase = endpointInput.value;
      this.api = new ApiClient(endpointInput.value);
    });
    this.byId("run").addEventListener("click", () => void this.runCurrentQuery());
    this.byId("prefixes").addEventListener("click", () => {
      this.session.insertPrefixes();
      this.byId<HTMLTextAreaElement>("query-text").value = this.session.text;
    });
    this.byId<HTMLTextAreaElement>("query-text").addEventListener("input", (ev) => {
      this.session.text = (ev.target as HTMLTextAreaElement).value;
    });
    window.addEventListener("hashchange", () => void this.route());
    void this.route();
  }

  byId<T extends HTMLElement = HTMLElement>(id: string): T {
    const node = this.root.getElementById(id);
    if (!node) {
      throw new Error(`missing #${id}`);
    }
    return node as T;
  }

  private show(page: "query" | "catalog" | "profile"): void {
    for (const name of ["query", "catalog", "profile"]) {
      this.byId(`page-${name}`).hidden = name !== page;
    }
  }

  async route(): Promise<void> {
    const route = parseHash(window.location.hash);
    if (route.page === "catalog") {
      this.show("catalog");
      await this.loadCatalog();
      return;
    }
    if (route.page === "profile") {
      this.show("profile");
      await this.loadProfile(route.type, route.iri);
      return;
    }
    this.show("query");
    if (route.query !== undefined && route.query !== this.session.text) {
      this.session.load(route.query);
      this.byId<HTMLTextAreaElement>("query-text").value = route.query;
    } else {
      this.byId<HTMLTextAreaElement>("query-text").value = this.session.text;
    }
  }

  async runCurrentQuery(): Promise<void> {
    // one in-flight query per session; a new run cancels the previous one
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const target = this.byId("results");
    this.byId("status").textContent = "running…";
    try {
      const results = await this.api.runQuery(this.session.text, controller.signal);
      this.session.lastResults = results;
      target.replaceChildren(renderResultsTable(results));
      this.byId("status").textContent = "";
      window.history.replaceState(null, "", queryRoute(this.session.text));
    } catch (err) {
      if (controller.signal.aborted) {
        return;
      }
      this.byId("status").textContent = "";
      if (err instanceof ApiError) {
        // keep previous results visible below the diagnostics
        target.prepend(renderError(err.status, err.body));
      } else {
        target.prepend(renderError(0, String(err)));
      }
    }
  }

  async loadCatalog(): Promise<void> {
    const target = this.byId("catalog-list");
    try {
      const entries = await this.api.fetchCatalog();
      target.replaceChildren(
        renderCatalog(entries, (entry) => {
          this.session.load(entry.query);
          window.location.hash = queryRoute(entry.query);
        }),
      );
    } catch (err) {
      target.replaceChildren(
        renderError(0, `service unreachable: ${String(err)}`),
      );
    }
  }

  async loadProfile(type: string, iri: string): Promise<void> {
    const target = this.byId("profile-view");
    try {
      const doc = await this.api.fetchProfile(type, iri);
      target.replaceChildren(renderProfile(doc));
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        const box = renderError(404, err.body);
        const back = document.createElement("a");
        back.href = "#/catalog";
        back.textContent = "Browse the query catalog";
        box.appendChild(back);
        target.replaceChildren(box);
      } else {
        target.replaceChildren(renderError(0, String(err)));
      }
    }
  }
}

// auto-start only inside the real page (tests build the DOM themselves)
if (typeof document !== "undefined" && document.getElementById("query-text")) {
  const app = new App();
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", () => app.start());
  } else {
    app.start();
  }
}
