import { beforeEach, describe, expect, it } from "vitest";

import type { CellLineSummary, EvidenceResponse } from "../src/api.js";
import { renderPartnerTables } from "../src/tables.js";
import { DETROIT, FixtureApi, flush } from "./helpers.js";
import detroitSummary from "./fixtures/detroit_summary.json";
import detroitTp53Evidence from "./fixtures/detroit_tp53_evidence.json";

const summary = detroitSummary as CellLineSummary;
const tp53Evidence = detroitTp53Evidence as EvidenceResponse;

function findRow(host: HTMLElement, entityId: string): HTMLTableRowElement {
  const row = host.querySelector(`tr[data-entity-id="${entityId}"]`);
  if (!row) throw new Error(`no row for ${entityId}`);
  return row as HTMLTableRowElement;
}

describe("partner tables", () => {
  let host: HTMLElement;
  let api: FixtureApi;

  beforeEach(() => {
    document.body.innerHTML = "";
    host = document.createElement("div");
    document.body.appendChild(host);
    api = new FixtureApi();
  });

  it("groups by category and preserves server order", () => {
    renderPartnerTables(host, summary, api);
    const titles = [...host.querySelectorAll(".group-title")].map((h) => h.textContent);
    expect(titles).toEqual(summary.groups.map((g) => g.category));
    const geneSection = [...host.querySelectorAll(".partner-group")].find(
      (s) => s.querySelector(".group-title")?.textContent === "Gene",
    )!;
    const rendered = [...geneSection.querySelectorAll(".partner-name")].map(
      (c) => c.textContent,
    );
    const fromServer = summary.groups
      .find((g) => g.category === "Gene")!
      .partners.map((p) => p.canonical_name);
    expect(rendered).toEqual(fromServer);
  });

  it("expanding the TP53 row reveals the full annotated abstract", async () => {
    renderPartnerTables(host, summary, api);
    const row = findRow(host, "hugo:TP53");
    const toggle = row.querySelector("button.toggle") as HTMLButtonElement;
    toggle.click();
    await flush();
    const detail = row.nextElementSibling as HTMLTableRowElement;
    expect(detail.hidden).toBe(false);
    const abstract = detail.querySelector(".evidence-abstract")!;
    expect(abstract.textContent).toBe(tp53Evidence.records[0].abstract.text);
    const marks = abstract.querySelectorAll("strong.entity-mark");
    expect(marks.length).toBe(tp53Evidence.records[0].abstract.marks.length);
    // emphasis comes from server offsets: each mark's text agrees with them
    const text = tp53Evidence.records[0].abstract.text;
    const expected = tp53Evidence.records[0].abstract.marks.map(
      ([lo, hi]) => text.slice(lo, hi),
    );
    expect([...marks].map((m) => m.textContent)).toEqual(expected);
  });

  it("collapse and re-expand never refetches", async () => {
    renderPartnerTables(host, summary, api);
    const row = findRow(host, "hugo:TP53");
    const toggle = row.querySelector("button.toggle") as HTMLButtonElement;
    toggle.click();
    await flush();
    expect(api.calls[`evidence:${DETROIT}:hugo:TP53`]).toBe(1);
    toggle.click();          // collapse
    toggle.click();          // expand again
    await flush();
    expect(api.calls[`evidence:${DETROIT}:hugo:TP53`]).toBe(1);
  });

  it("only one in-flight request per row", async () => {
    renderPartnerTables(host, summary, api);
    const row = findRow(host, "hugo:TP53");
    const toggle = row.querySelector("button.toggle") as HTMLButtonElement;
    toggle.click();
    toggle.click();
    toggle.click();          // expand, collapse, expand before load settles
    await flush();
    expect(api.calls[`evidence:${DETROIT}:hugo:TP53`]).toBe(1);
  });

  it("row click drives the selection callback, marker style follows", () => {
    const picked: string[] = [];
    const handle = renderPartnerTables(host, summary, api, (p) => picked.push(p.entity_id));
    const row = findRow(host, "hugo:TP53");
    row.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(picked).toEqual(["hugo:TP53"]);
    handle.highlightRow("hugo:TP53");
    expect(row.classList.contains("selected")).toBe(true);
  });

  it("shows an empty state when there are no relations", () => {
    const empty: CellLineSummary = {
      entity_id: "cellosaurus:CVCL_0000",
      category: "CellLine",
      canonical_name: "Nothing",
      synonyms: [],
      groups: [],
    };
    renderPartnerTables(host, empty, api);
    expect(host.querySelector(".empty-state")).toBeTruthy();
  });
});
