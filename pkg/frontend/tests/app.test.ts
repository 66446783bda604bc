// Page-level tests against the recorded Detroit 562 fixtures: the secondary
// acceptance flow (profile colors, five red markers, TP53 expansion) plus
// render determinism.

import { beforeEach, describe, expect, it } from "vitest";

import type { EvidenceResponse } from "../src/api.js";
import { renderCellLinePage, renderSearchPage } from "../src/app.js";
import { GAIN_COLOR, LOSS_COLOR, MARKER_COLOR } from "../src/plot.js";
import { DETROIT, FixtureApi, flush } from "./helpers.js";
import detroitTp53Evidence from "./fixtures/detroit_tp53_evidence.json";

const MIDLINE = 140;

describe("cell line page", () => {
  let root: HTMLElement;
  let api: FixtureApi;
  const nav = { go: (_: string) => {} };

  beforeEach(() => {
    document.body.innerHTML = "";
    root = document.createElement("div");
    document.body.appendChild(root);
    api = new FixtureApi();
  });

  it("renders the acceptance fixture: colors, markers, TP53 expansion", async () => {
    await renderCellLinePage(root, api, nav, DETROIT);
    await flush();

    // gains above the axis in yellow, losses below in blue
    const gains = [...root.querySelectorAll("rect.bin-gain")];
    const losses = [...root.querySelectorAll("rect.bin-loss")];
    expect(gains.length).toBeGreaterThan(0);
    expect(losses.length).toBeGreaterThan(0);
    for (const rect of gains) {
      expect(rect.getAttribute("fill")).toBe(GAIN_COLOR);
      expect(Number(rect.getAttribute("y"))).toBeLessThan(MIDLINE);
    }
    for (const rect of losses) {
      expect(rect.getAttribute("fill")).toBe(LOSS_COLOR);
      expect(Number(rect.getAttribute("y"))).toBeCloseTo(MIDLINE, 6);
    }

    // five red gene markers at the fixture coordinates
    const markers = [...root.querySelectorAll("g.marker")];
    expect(markers.length).toBe(5);
    const labels = new Set(markers.map((m) => m.querySelector("text")?.textContent));
    expect(labels).toEqual(new Set(["AURKA", "MYC", "NGF", "WEE1", "TP53"]));
    for (const marker of markers) {
      expect(marker.querySelector("line.marker-pin")?.getAttribute("stroke"))
        .toBe(MARKER_COLOR);
    }

    // expanding the TP53 row reveals the full annotated abstract
    const row = root.querySelector('tr[data-entity-id="hugo:TP53"]')!;
    (row.querySelector("button.toggle") as HTMLButtonElement).click();
    await flush();
    const abstractText = (detroitTp53Evidence as EvidenceResponse)
      .records[0].abstract.text;
    const detail = row.nextElementSibling!;
    expect((detail as HTMLTableRowElement).hidden).toBe(false);
    expect(detail.querySelector(".evidence-abstract")?.textContent).toBe(abstractText);
  });

  it("marker click highlights and expands the matching row", async () => {
    await renderCellLinePage(root, api, nav, DETROIT);
    await flush();
    const tp53Marker = [...root.querySelectorAll("g.marker")].find(
      (m) => (m as SVGGElement).dataset.entityId === "hugo:TP53",
    ) as SVGGElement;
    tp53Marker.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await flush();
    const row = root.querySelector('tr[data-entity-id="hugo:TP53"]')!;
    expect(row.classList.contains("selected")).toBe(true);
    expect(tp53Marker.classList.contains("selected")).toBe(true);
    expect((row.nextElementSibling as HTMLTableRowElement).hidden).toBe(false);
  });

  it("row click highlights the matching marker", async () => {
    await renderCellLinePage(root, api, nav, DETROIT);
    await flush();
    const row = root.querySelector('tr[data-entity-id="hugo:AURKA"]')!;
    row.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    const marker = [...root.querySelectorAll("g.marker")].find(
      (m) => (m as SVGGElement).dataset.entityId === "hugo:AURKA",
    )!;
    expect(marker.classList.contains("selected")).toBe(true);
  });

  it("unknown cell line surfaces a retryable notice", async () => {
    await renderCellLinePage(root, api, nav, "cellosaurus:CVCL_0000");
    expect(root.querySelector(".error-notice")).toBeTruthy();
    expect(root.querySelector("button.retry")).toBeTruthy();
  });

  it("render output is snapshot-stable", async () => {
    await renderCellLinePage(root, api, nav, DETROIT);
    await flush();
    const first = root.innerHTML;
    const again = document.createElement("div");
    document.body.appendChild(again);
    await renderCellLinePage(again, api, nav, DETROIT);
    await flush();
    expect(again.innerHTML).toBe(first);
    expect(first).toMatchSnapshot();
  });
});

describe("search page", () => {
  it("renders and routes to a picked cell line", async () => {
    const root = document.createElement("div");
    document.body.appendChild(root);
    const api = new FixtureApi();
    const visited: string[] = [];
    renderSearchPage(root, api, { go: (p) => visited.push(p) });
    await new Promise((resolve) => setTimeout(resolve, 0));
    const row = root.querySelector(".search-result") as HTMLElement;
    row.click();
    expect(visited.length).toBe(1);
    expect(visited[0].startsWith("/cellline/")).toBe(true);
  });
});
