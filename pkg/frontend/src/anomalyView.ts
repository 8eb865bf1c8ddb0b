import { categoryColor } from "./palette.js";
import type { AnomalyDoc, RegionLine } from "./types.js";

function renderPane(title: string, lines: RegionLine[]): HTMLElement {
  const pane = document.createElement("div");
  pane.className = "asm-pane";
  const head = document.createElement("h4");
  head.textContent = title;
  pane.appendChild(head);
  const listing = document.createElement("pre");
  listing.className = "asm-listing";
  for (const line of lines) {
    const row = document.createElement("div");
    row.className = `asm-line role-${line.role}`;
    if (line.role === "group_break") {
      row.classList.add("group-break");
      row.textContent = " ";
      listing.appendChild(row);
      continue;
    }
    const no = document.createElement("span");
    no.className = "lineno";
    no.textContent = line.line === null ? "" : String(line.line + 1);
    const text = document.createElement("span");
    text.className = "code";
    text.textContent = line.text;
    row.append(no, text);
    if (line.annotations.length > 0) {
      const cat = line.annotations[0].category;
      row.dataset.category = cat;
      row.classList.add("tinted");
      row.style.setProperty("--cat-color", categoryColor(cat));
      if (line.annotations.some((a) => a.violating)) {
        row.classList.add("violating");
      }
    }
    listing.appendChild(row);
  }
  pane.appendChild(listing);
  return pane;
}

export function renderAnomaly(container: HTMLElement, doc: AnomalyDoc): void {
  container.replaceChildren();
  const v = doc.verdict;

  const header = document.createElement("h2");
  header.className = "anomaly-header";
  header.textContent = `Anomaly in section ${v.section}`;
  container.appendChild(header);

  const sub = document.createElement("p");
  sub.className = "anomaly-builds";
  sub.textContent = `previous build ${v.sourceBuild} vs current build ${v.targetBuild}`;
  container.appendChild(sub);

  const legend = document.createElement("div");
  legend.className = "category-legend";
  for (const cat of [...new Set(v.edits.map((e) => e.category))]) {
    const chip = document.createElement("span");
    chip.className = "legend-chip";
    chip.dataset.category = cat;
    chip.style.setProperty("--cat-color", categoryColor(cat));
    chip.textContent = cat;
    legend.appendChild(chip);
  }
  container.appendChild(legend);

  const panes = document.createElement("div");
  panes.className = "asm-panes";
  panes.appendChild(renderPane(`previous (${doc.source.build})`, doc.source.lines));
  panes.appendChild(renderPane(`current (${doc.target.build})`, doc.target.lines));
  container.appendChild(panes);

  const editList = document.createElement("ul");
  editList.className = "edit-list";
  for (const e of v.edits) {
    const item = document.createElement("li");
    item.dataset.category = e.category;
    item.classList.toggle("violating", e.violating);
    const where =
      e.sourceLine !== null ? ` [line ${e.sourceLine + 1}]` :
      e.targetLine !== null ? ` [line ${e.targetLine + 1}, new]` : "";
    item.textContent = `${e.category}: ${e.detail}${where}`;
    editList.appendChild(item);
  }
  container.appendChild(editList);
}

export function renderNoAnomaly(container: HTMLElement, detail: string): void {
  container.replaceChildren();
  const note = document.createElement("p");
  note.className = "placeholder no-anomaly";
  note.textContent = `no anomaly: ${detail}`;
  container.appendChild(note);
}
