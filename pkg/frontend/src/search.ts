// Debounced cell line search with keyboard navigation. An empty query shows
// the paginated full list, so the page doubles as an index.

import type { Api, CellLineListItem } from "./api.js";
import { el } from "./format.js";

export const SEARCH_DEBOUNCE_MS = 250;

export interface SearchHandle {
  query(prefix: string): Promise<void>;
}

export function renderSearch(
  container: HTMLElement,
  api: Api,
  onPick: (item: CellLineListItem) => void,
): SearchHandle {
  container.textContent = "";
  const box = el("div", "search");
  const input = el("input", "search-input");
  input.setAttribute("type", "search");
  input.setAttribute("placeholder", "Search cell lines by name or synonym");
  input.setAttribute("aria-label", "Search cell lines");
  const results = el("ul", "search-results");
  box.appendChild(input);
  box.appendChild(results);
  container.appendChild(box);

  let timer: ReturnType<typeof setTimeout> | null = null;
  let requestSeq = 0;
  let activeIndex = -1;
  let items: CellLineListItem[] = [];

  function renderResults(): void {
    results.textContent = "";
    if (items.length === 0) {
      results.appendChild(el("li", "empty-state", "No matching cell lines."));
      return;
    }
    items.forEach((item, index) => {
      const li = el("li", "search-result");
      li.classList.toggle("active", index === activeIndex);
      const name = el("span", "result-name", item.canonical_name);
      const meta = el(
        "span", "result-meta",
        `${item.n_partners} linked entit${item.n_partners === 1 ? "y" : "ies"}`,
      );
      li.appendChild(name);
      li.appendChild(meta);
      li.addEventListener("click", () => onPick(item));
      results.appendChild(li);
    });
  }

  async function runQuery(prefix: string): Promise<void> {
    const seq = ++requestSeq;
    try {
      const payload = await api.searchCellLines(prefix);
      if (seq !== requestSeq) return; // a newer request superseded this one
      items = payload.items;
      activeIndex = items.length ? 0 : -1;
      renderResults();
    } catch (error: unknown) {
      if (seq !== requestSeq) return;
      results.textContent = "";
      const notice = el("li", "error-notice", `Search failed: ${String(error)} `);
      const retry = el("button", "retry", "Retry");
      retry.addEventListener("click", () => void runQuery(prefix));
      notice.appendChild(retry);
      results.appendChild(notice);
    }
  }

  input.addEventListener("input", () => {
    if (timer) clearTimeout(timer);
    timer = setTimeout(() => void runQuery(input.value.trim()), SEARCH_DEBOUNCE_MS);
  });

  input.addEventListener("keydown", (event) => {
    if (event.key === "ArrowDown") {
      event.preventDefault();
      if (items.length) {
        activeIndex = (activeIndex + 1) % items.length;
        renderResults();
      }
    } else if (event.key === "ArrowUp") {
      event.preventDefault();
      if (items.length) {
        activeIndex = (activeIndex - 1 + items.length) % items.length;
        renderResults();
      }
    } else if (event.key === "Enter" && activeIndex >= 0) {
      event.preventDefault();
      onPick(items[activeIndex]);
    }
  });

  void runQuery("");
  return {
    query: runQuery,
  };
}
