import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { SEARCH_DEBOUNCE_MS, renderSearch } from "../src/search.js";
import { FixtureApi, flush } from "./helpers.js";

describe("cell line search", () => {
  let host: HTMLElement;
  let api: FixtureApi;

  beforeEach(() => {
    vi.useFakeTimers();
    document.body.innerHTML = "";
    host = document.createElement("div");
    document.body.appendChild(host);
    api = new FixtureApi();
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  async function settle(): Promise<void> {
    await vi.advanceTimersByTimeAsync(SEARCH_DEBOUNCE_MS + 10);
  }

  it("empty query lists the paginated full set", async () => {
    renderSearch(host, api, () => {});
    await settle();
    const rows = host.querySelectorAll(".search-result");
    expect(rows.length).toBeGreaterThan(2);
    expect(api.calls["search:"]).toBe(1);
  });

  it("prefix search is debounced", async () => {
    renderSearch(host, api, () => {});
    await settle();
    const input = host.querySelector("input") as HTMLInputElement;
    for (const value of ["D", "De", "Det"]) {
      input.value = value;
      input.dispatchEvent(new Event("input", { bubbles: true }));
      await vi.advanceTimersByTimeAsync(50);  // below the debounce threshold
    }
    await settle();
    expect(api.calls["search:D"]).toBeUndefined();
    expect(api.calls["search:De"]).toBeUndefined();
    expect(api.calls["search:Det"]).toBe(1);
    const names = [...host.querySelectorAll(".result-name")].map((n) => n.textContent);
    expect(names).toEqual(["Detroit 562"]);
  });

  it("unknown prefix shows the empty state", async () => {
    renderSearch(host, api, () => {});
    const input = host.querySelector("input") as HTMLInputElement;
    input.value = "zzz";
    input.dispatchEvent(new Event("input", { bubbles: true }));
    await settle();
    expect(host.querySelector(".empty-state")?.textContent).toContain("No matching");
  });

  it("keyboard navigation picks with Enter", async () => {
    const picked: string[] = [];
    renderSearch(host, api, (item) => picked.push(item.entity_id));
    await settle();
    const input = host.querySelector("input") as HTMLInputElement;
    input.dispatchEvent(new KeyboardEvent("keydown", { key: "ArrowDown", bubbles: true }));
    input.dispatchEvent(new KeyboardEvent("keydown", { key: "Enter", bubbles: true }));
    expect(picked.length).toBe(1);
  });
});
