import { describe, expect, it } from "vitest";

import { classifyIri } from "../src/links.js";

describe("classifyIri", () => {
  it("links profiled entity IRIs to their profile route", () => {
    const link = classifyIri("https://w3id.org/reproduceme/notebook_12");
    expect(link.kind).toBe("profile");
    if (link.kind === "profile") {
      expect(link.profileType).toBe("Notebook");
      expect(link.route).toBe(
        "#/profile/Notebook?iri=" +
          encodeURIComponent("https://w3id.org/reproduceme/notebook_12"),
      );
    }
  });

  it.each([
    ["repository_3", "Repository"],
    ["article_7", "Article"],
    ["journal_2", "Journal"],
    ["author_5", "Author"],
    ["mesh_D000007", "MESH"],
  ])("maps %s to the %s profile", (local, type) => {
    const link = classifyIri(`https://w3id.org/reproduceme/${local}`);
    expect(link).toMatchObject({ kind: "profile", profileType: type });
  });

  it("does not confuse longer prefixes with shorter ones", () => {
    expect(
      classifyIri("https://w3id.org/reproduceme/repository_file_9").kind,
    ).toBe("internal");
    expect(
      classifyIri("https://w3id.org/reproduceme/repository_release_4").kind,
    ).toBe("internal");
    expect(
      classifyIri("https://w3id.org/reproduceme/notebook_ast_4").kind,
    ).toBe("internal");
    expect(classifyIri("https://w3id.org/reproduceme/cell_9").kind).toBe("internal");
  });

  it("treats ontology terms and unknown internals as plain internal", () => {
    expect(classifyIri("https://w3id.org/reproduceme/Notebook").kind).toBe("internal");
    expect(classifyIri("https://w3id.org/reproduceme/kernel").kind).toBe("internal");
  });

  it("classifies everything else as external", () => {
    expect(classifyIri("https://github.com/a/b").kind).toBe("external");
    expect(classifyIri("http://www.wikidata.org/entity/Q1").kind).toBe("external");
  });
});
