// Categorized ranked relation tables with expandable evidence rows. Order
// and grouping mirror the server response exactly; expansion lazily loads
// the evidence once and re-expanding never refetches.

import type { Api, CellLineSummary, EvidenceRecord, Partner } from "./api.js";
import { articleUrl, el, formatScore, renderMarkedText } from "./format.js";

export interface TablesHandle {
  highlightRow(entityId: string | null): void;
  expandRow(entityId: string): Promise<void>;
}

function renderEvidenceRecord(record: EvidenceRecord): HTMLElement {
  const item = el("article", "evidence-record");

  const header = el("div", "evidence-header");
  const link = el("a", "article-link", record.title || record.doc_id);
  link.setAttribute("href", articleUrl(record.doc_id));
  link.setAttribute("target", "_blank");
  link.setAttribute("rel", "noopener");
  header.appendChild(link);
  header.appendChild(
    el("span", "evidence-score",
       `score ${formatScore(record.total)}${record.has_triple ? " (triple)" : ""}`),
  );
  item.appendChild(header);

  const snippet = el("p", "evidence-snippet");
  snippet.appendChild(renderMarkedText(record.sentence.text, record.sentence.marks));
  item.appendChild(snippet);

  const abstract = el("p", "evidence-abstract");
  abstract.appendChild(renderMarkedText(record.abstract.text, record.abstract.marks));
  item.appendChild(abstract);
  return item;
}

export function renderPartnerTables(
  container: HTMLElement,
  summary: CellLineSummary,
  api: Api,
  onRowSelect?: (partner: Partner) => void,
): TablesHandle {
  container.textContent = "";
  const rows = new Map<string, HTMLTableRowElement>();
  const detailRows = new Map<string, HTMLTableRowElement>();
  const loaded = new Set<string>();
  const inFlight = new Map<string, Promise<void>>();

  if (summary.groups.length === 0) {
    container.appendChild(
      el("p", "empty-state", "No literature relations for this cell line."),
    );
  }

  for (const group of summary.groups) {
    const section = el("section", "partner-group");
    section.appendChild(el("h3", "group-title", group.category));
    const table = el("table", "partner-table");
    const head = el("thead");
    const headRow = el("tr");
    for (const column of ["Entity", "Score", "Evidence", ""]) {
      headRow.appendChild(el("th", undefined, column));
    }
    head.appendChild(headRow);
    table.appendChild(head);
    const body = el("tbody");

    for (const partner of group.partners) {
      const row = el("tr", "partner-row");
      row.dataset.entityId = partner.entity_id;
      row.appendChild(el("td", "partner-name", partner.canonical_name));
      row.appendChild(el("td", "partner-score", formatScore(partner.corpus_score)));
      row.appendChild(
        el("td", "partner-evidence",
           `${partner.n_evidence} document${partner.n_evidence === 1 ? "" : "s"}`),
      );
      const toggleCell = el("td", "toggle-cell");
      const toggle = el("button", "toggle", "Expand");
      toggle.setAttribute("aria-expanded", "false");
      toggleCell.appendChild(toggle);
      row.appendChild(toggleCell);
      body.appendChild(row);

      const detail = el("tr", "detail-row");
      detail.hidden = true;
      const detailCell = el("td", "detail-cell");
      detailCell.setAttribute("colspan", "4");
      detail.appendChild(detailCell);
      body.appendChild(detail);

      rows.set(partner.entity_id, row);
      detailRows.set(partner.entity_id, detail);

      const ensureLoaded = (): Promise<void> => {
        if (loaded.has(partner.entity_id)) return Promise.resolve();
        const pending = inFlight.get(partner.entity_id);
        if (pending) return pending;
        detailCell.textContent = "Loading evidence...";
        const request = api
          .evidence(summary.entity_id, partner.entity_id)
          .then((payload) => {
            detailCell.textContent = "";
            for (const record of payload.records) {
              detailCell.appendChild(renderEvidenceRecord(record));
            }
            loaded.add(partner.entity_id);
          })
          .catch((error: unknown) => {
            const notice = el("p", "error-notice",
                              `Could not load evidence: ${String(error)}. `);
            const retry = el("button", "retry", "Retry");
            retry.addEventListener("click", () => {
              detailCell.textContent = "";
              void ensureLoaded();
            });
            detailCell.textContent = "";
            notice.appendChild(retry);
            detailCell.appendChild(notice);
          })
          .finally(() => {
            inFlight.delete(partner.entity_id);
          });
        inFlight.set(partner.entity_id, request);
        return request;
      };

      toggle.addEventListener("click", () => {
        const expanded = !detail.hidden;
        if (expanded) {
          detail.hidden = true;
          toggle.textContent = "Expand";
          toggle.setAttribute("aria-expanded", "false");
          return;
        }
        detail.hidden = false;
        toggle.textContent = "Collapse";
        toggle.setAttribute("aria-expanded", "true");
        void ensureLoaded();
      });

      row.addEventListener("click", (event) => {
        if ((event.target as HTMLElement).closest("button")) return;
        onRowSelect?.(partner);
      });
    }
    table.appendChild(body);
    section.appendChild(table);
    container.appendChild(section);
  }

  return {
    highlightRow(entityId: string | null): void {
      for (const [id, row] of rows) {
        row.classList.toggle("selected", id === entityId);
      }
      const target = entityId ? rows.get(entityId) : undefined;
      if (target && typeof target.scrollIntoView === "function") {
        target.scrollIntoView({ block: "nearest" });
      }
    },
    async expandRow(entityId: string): Promise<void> {
      const detail = detailRows.get(entityId);
      const row = rows.get(entityId);
      if (!detail || !row) return;
      if (detail.hidden) {
        const toggle = row.querySelector("button.toggle") as HTMLButtonElement | null;
        toggle?.click();
      }
      const pending = inFlight.get(entityId);
      if (pending) await pending;
    },
  };
}
