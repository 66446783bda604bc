// Single-page exploration portal. Routes: "/" is the cell line search,
// "/cellline/{id}" the profile-plus-relations page. Marker and table row
// selections highlight each other; the data flow is strictly API-driven.

import type { Api, Partner, ProfileMarker } from "./api.js";
import { HttpApi } from "./api.js";
import { el } from "./format.js";
import { renderProfilePlot } from "./plot.js";
import { renderSearch } from "./search.js";
import { renderPartnerTables } from "./tables.js";

export const PROFILE_TOP_K = 5;

export interface Navigator {
  go(path: string): void;
}

export function renderSearchPage(root: HTMLElement, api: Api, nav: Navigator): void {
  root.textContent = "";
  const page = el("div", "page search-page");
  page.appendChild(el("h1", "site-title", "Cancer cell line literature explorer"));
  page.appendChild(
    el("p", "tagline",
       "Pick a cell line to see its copy number profile annotated with the "
       + "top literature-ranked genes, and the evidence behind each relation."),
  );
  const searchHost = el("div");
  page.appendChild(searchHost);
  root.appendChild(page);
  renderSearch(searchHost, api, (item) => nav.go(`/cellline/${item.entity_id}`));
}

export async function renderCellLinePage(
  root: HTMLElement,
  api: Api,
  nav: Navigator,
  cellLineId: string,
): Promise<void> {
  root.textContent = "";
  const page = el("div", "page cellline-page");
  const back = el("a", "back-link", "< all cell lines");
  back.setAttribute("href", "/");
  back.addEventListener("click", (event) => {
    event.preventDefault();
    nav.go("/");
  });
  page.appendChild(back);
  const heading = el("h1", "cellline-name", cellLineId);
  page.appendChild(heading);
  const plotHost = el("div", "plot-host");
  const tablesHost = el("div", "tables-host");
  page.appendChild(plotHost);
  page.appendChild(tablesHost);
  root.appendChild(page);

  let summary;
  try {
    summary = await api.cellLine(cellLineId);
  } catch (error: unknown) {
    const notice = el("p", "error-notice", `Could not load ${cellLineId}: ${String(error)} `);
    const retry = el("button", "retry", "Retry");
    retry.addEventListener("click", () => {
      void renderCellLinePage(root, api, nav, cellLineId);
    });
    notice.appendChild(retry);
    page.appendChild(notice);
    return;
  }
  heading.textContent = summary.canonical_name;
  if (summary.synonyms.length) {
    page.insertBefore(
      el("p", "synonyms", `also known as ${summary.synonyms.join(", ")}`),
      plotHost,
    );
  }

  const tables = renderPartnerTables(tablesHost, summary, api, onRowSelect);
  let plot: ReturnType<typeof renderProfilePlot> | null = null;

  function onMarkerClick(marker: ProfileMarker): void {
    plot?.highlightMarker(marker.entity_id);
    tables.highlightRow(marker.entity_id);
    void tables.expandRow(marker.entity_id);
  }

  function onRowSelect(partner: Partner): void {
    tables.highlightRow(partner.entity_id);
    plot?.highlightMarker(partner.entity_id);
  }

  try {
    const profile = await api.profile(cellLineId, PROFILE_TOP_K);
    plot = renderProfilePlot(plotHost, profile, onMarkerClick);
  } catch {
    // no profile for this line: relations alone are still useful
    plotHost.appendChild(
      el("p", "empty-state", "No copy number profile available for this cell line."),
    );
  }
}

export function route(root: HTMLElement, api: Api, nav: Navigator, path: string): void {
  const match = path.match(/^\/cellline\/(.+)$/);
  if (match) {
    void renderCellLinePage(root, api, nav, decodeURIComponent(match[1]));
  } else {
    renderSearchPage(root, api, nav);
  }
}

export function startApp(root: HTMLElement, api: Api = new HttpApi()): void {
  const nav: Navigator = {
    go(path: string): void {
      history.pushState(null, "", path);
      route(root, api, nav, path);
    },
  };
  window.addEventListener("popstate", () => {
    route(root, api, nav, location.pathname);
  });
  route(root, api, nav, location.pathname);
}
