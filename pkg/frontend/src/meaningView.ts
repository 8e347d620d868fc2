// Meaning lists as predicate rows; rows named in `highlight` get marked
// (used by the query page to show which predicates matched).

import { MeaningPayload } from "./api.js";

export function renderMeaning(
  meaning: MeaningPayload,
  doc: Document,
  highlight: Set<string> = new Set(),
): HTMLElement {
  const table = doc.createElement("table");
  table.className = "meaning-list";
  for (const line of meaning.lines) {
    const row = doc.createElement("tr");
    row.className = highlight.has(line) ? "predicate matched" : "predicate";
    row.dataset["line"] = line;
    const parts = line.split(" ");
    for (const part of parts) {
      const cell = doc.createElement("td");
      cell.textContent = part;
      row.appendChild(cell);
    }
    table.appendChild(row);
  }
  return table;
}
