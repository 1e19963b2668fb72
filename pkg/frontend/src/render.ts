/** DOM rendering for result tables, the catalog, and profile pages. */
import { classifyIri } from "./links.js";
import type {
  CatalogEntry,
  ProfileDoc,
  SparqlResults,
  SparqlTermCell,
} from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export function renderCell(cell: SparqlTermCell): HTMLElement {
  const wrap = el("span", `cell cell-${cell.type}`);
  if (cell.type === "uri") {
    const link = classifyIri(cell.value);
    const a = el("a", undefined, cell.value);
    if (link.kind === "profile") {
      a.href = link.route;
      a.className = "iri internal";
      a.addEventListener("click", (ev) => {
        ev.preventDefault();
        window.location.hash = link.route;
      });
    } else if (link.kind === "external") {
      a.href = cell.value;
      a.target = "_blank";
      a.rel = "noopener noreferrer";
      a.className = "iri external";
    } else {
      a.href = cell.value;
      a.className = "iri internal-plain";
    }
    wrap.appendChild(a);
    return wrap;
  }
  if (cell.type === "bnode") {
    wrap.textContent = `_:${cell.value}`;
    return wrap;
  }
  wrap.textContent = cell.value;
  if (cell["xml:lang"]) {
    wrap.appendChild(el("sup", "lang", `@${cell["xml:lang"]}`));
  }
  return wrap;
}

export function renderResultsTable(doc: SparqlResults): HTMLElement {
  const container = el("div", "results");
  const vars = doc.head.vars;
  const rows = doc.results.bindings;
  container.appendChild(el("p", "row-count", `${rows.length} rows`));
  const table = el("table", "results-table");
  const thead = el("thead");
  const headRow = el("tr");
  for (const v of vars) {
    headRow.appendChild(el("th", undefined, v));
  }
  thead.appendChild(headRow);
  table.appendChild(thead);
  const tbody = el("tbody");
  for (const binding of rows) {
    const tr = el("tr");
    for (const v of vars) {
      const td = el("td");
      const cell = binding[v];
      if (cell) {
        td.appendChild(renderCell(cell));
      } else {
        td.className = "unbound";
      }
      tr.appendChild(td);
    }
    tbody.appendChild(tr);
  }
  table.appendChild(tbody);
  container.appendChild(table);
  return container;
}

export function renderError(status: number, body: string): HTMLElement {
  const box = el("div", "error-box");
  box.appendChild(el("strong", undefined, status ? `Error ${status}` : "Error"));
  box.appendChild(el("pre", undefined, body));
  return box;
}

const CATEGORY_TITLES: Record<string, string> = {
  "reproduce-figures": "Reproduce figures",
  exploration: "Exploration",
  federation: "Federation",
};

export function renderCatalog(
  entries: CatalogEntry[],
  onSelect: (entry: CatalogEntry) => void,
): HTMLElement {
  const container = el("div", "catalog");
  if (entries.length === 0) {
    container.appendChild(el("p", "empty", "The catalog is empty."));
    return container;
  }
  const byCategory = new Map<string, CatalogEntry[]>();
  for (const entry of entries) {
    const bucket = byCategory.get(entry.category) ?? [];
    bucket.push(entry);
    byCategory.set(entry.category, bucket);
  }
  for (const [category, bucket] of byCategory) {
    const section = el("section", "catalog-group");
    section.appendChild(el("h3", undefined, CATEGORY_TITLES[category] ?? category));
    const list = el("ul");
    for (const entry of bucket) {
      const item = el("li");
      const button = el("button", "catalog-entry", entry.title);
      button.dataset["entryId"] = entry.id;
      button.title = entry.description;
      button.addEventListener("click", () => onSelect(entry));
      item.appendChild(button);
      if (entry.description) {
        item.appendChild(el("p", "entry-description", entry.description));
      }
      list.appendChild(item);
    }
    section.appendChild(list);
    container.appendChild(section);
  }
  return container;
}

export function renderProfile(doc: ProfileDoc): HTMLElement {
  const container = el("div", "profile");
  container.appendChild(el("h2", undefined, `${doc.type} profile`));
  container.appendChild(el("p", "profile-iri", doc.iri));

  const lineage = doc.aspects.find((a) => a.name === "lineage");
  if (lineage?.results && lineage.results.results.bindings.length > 0) {
    const crumbs = el("nav", "breadcrumbs");
    const first = lineage.results.results.bindings[0]!;
    for (const v of lineage.results.head.vars) {
      const cell = first[v];
      if (cell && cell.type === "uri") {
        crumbs.appendChild(renderCell(cell));
        crumbs.appendChild(document.createTextNode(" ← "));
      }
    }
    crumbs.appendChild(el("span", undefined, doc.iri));
    container.appendChild(crumbs);
  }

  for (const aspect of doc.aspects) {
    const section = el("section", "aspect");
    section.dataset["aspect"] = aspect.name;
    section.appendChild(el("h3", undefined, aspect.name.replace(/_/g, " ")));
    const details = el("details");
    details.appendChild(el("summary", undefined, "query"));
    details.appendChild(el("pre", "aspect-query", aspect.query));
    section.appendChild(details);
    if (aspect.error) {
      section.appendChild(renderError(0, aspect.error));
    } else if (aspect.results) {
      section.appendChild(renderResultsTable(aspect.results));
    }
    container.appendChild(section);
  }
  return container;
}
