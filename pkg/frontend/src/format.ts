// Rendering helpers. Entity emphasis always derives from server-provided
// character offsets; the client never scans the text itself.

import type { Mark } from "./api.js";

export function renderMarkedText(text: string, marks: Mark[]): DocumentFragment {
  const fragment = document.createDocumentFragment();
  let cursor = 0;
  const ordered = [...marks].sort((a, b) => a[0] - b[0]);
  for (const [start, end, entityId] of ordered) {
    if (start < cursor || end > text.length || start >= end) {
      continue; // defensive: never let a bad offset corrupt the text
    }
    if (start > cursor) {
      fragment.appendChild(document.createTextNode(text.slice(cursor, start)));
    }
    const strong = document.createElement("strong");
    strong.className = "entity-mark";
    strong.dataset.entityId = entityId;
    strong.textContent = text.slice(start, end);
    fragment.appendChild(strong);
    cursor = end;
  }
  if (cursor < text.length) {
    fragment.appendChild(document.createTextNode(text.slice(cursor)));
  }
  return fragment;
}

export function formatScore(score: number): string {
  return score.toFixed(3);
}

export function articleUrl(docId: string): string {
  return `https://pubmed.ncbi.nlm.nih.gov/${encodeURIComponent(docId)}/`;
}

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}
