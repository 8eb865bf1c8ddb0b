import { SERIES_COLORS } from "./palette.js";
import type { ResultsDoc } from "./types.js";

const SVGNS = "http://www.w3.org/2000/svg";
const W = 640;
const H = 360;
const M = { left: 60, right: 20, top: 20, bottom: 44 };

function numeric(v: number | string): number {
  const n = typeof v === "number" ? v : parseFloat(v);
  return Number.isFinite(n) ? n : 0;
}

export function renderResultsChart(container: HTMLElement, doc: ResultsDoc): void {
  container.replaceChildren();
  if (doc.series.length === 0) {
    const empty = document.createElement("p");
    empty.className = "placeholder";
    empty.textContent = "no results yet";
    container.appendChild(empty);
    return;
  }

  const pts = doc.series.flatMap((s) =>
    s.points.map((p) => [numeric(p.param), p.value] as const));
  const xs = pts.map(([x]) => x);
  const ys = pts.map(([, y]) => y);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs, xMin + 1e-9);
  const yMin = Math.min(0, ...ys);
  const yMax = Math.max(...ys, yMin + 1e-9);

  const plotW = W - M.left - M.right;
  const plotH = H - M.top - M.bottom;
  const sx = (x: number) => M.left + ((x - xMin) / (xMax - xMin)) * plotW;
  const sy = (y: number) => M.top + plotH - ((y - yMin) / (yMax - yMin)) * plotH;

  const svg = document.createElementNS(SVGNS, "svg");
  svg.setAttribute("viewBox", `0 0 ${W} ${H}`);
  svg.setAttribute("class", "results-svg");

  for (let i = 0; i <= 4; i++) {
    const y = M.top + (plotH * i) / 4;
    const grid = document.createElementNS(SVGNS, "line");
    grid.setAttribute("x1", String(M.left));
    grid.setAttribute("x2", String(M.left + plotW));
    grid.setAttribute("y1", String(y));
    grid.setAttribute("y2", String(y));
    grid.setAttribute("class", "grid");
    svg.appendChild(grid);
    const label = document.createElementNS(SVGNS, "text");
    label.setAttribute("x", String(M.left - 6));
    label.setAttribute("y", String(y + 4));
    label.setAttribute("text-anchor", "end");
    label.setAttribute("class", "axis-label");
    label.textContent = (yMax - ((yMax - yMin) * i) / 4).toPrecision(3);
    svg.appendChild(label);
  }

  const axisTitle = document.createElementNS(SVGNS, "text");
  axisTitle.setAttribute("x", String(M.left + plotW / 2));
  axisTitle.setAttribute("y", String(H - 8));
  axisTitle.setAttribute("text-anchor", "middle");
  axisTitle.setAttribute("class", "axis-label");
  axisTitle.textContent = doc.param;
  svg.appendChild(axisTitle);

  doc.series.forEach((s, i) => {
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    const sorted = [...s.points].sort((a, b) => numeric(a.param) - numeric(b.param));
    const line = document.createElementNS(SVGNS, "polyline");
    line.setAttribute(
      "points",
      sorted.map((p) => `${sx(numeric(p.param))},${sy(p.value)}`).join(" "),
    );
    line.setAttribute("fill", "none");
    line.setAttribute("stroke", color);
    line.setAttribute("stroke-width", "2");
    line.setAttribute("data-label", s.label);
    svg.appendChild(line);
    for (const p of sorted) {
      const dot = document.createElementNS(SVGNS, "circle");
      dot.setAttribute("cx", String(sx(numeric(p.param))));
      dot.setAttribute("cy", String(sy(p.value)));
      dot.setAttribute("r", "3.5");
      dot.setAttribute("fill", color);
      const tip = document.createElementNS(SVGNS, "title");
      tip.textContent = `${s.label} @ ${p.param}: ${p.value} ${p.unit} (build ${p.build})`;
      dot.appendChild(tip);
      svg.appendChild(dot);
    }
  });

  container.appendChild(svg);

  const legend = document.createElement("div");
  legend.className = "chart-legend";
  doc.series.forEach((s, i) => {
    const entry = document.createElement("span");
    entry.className = "legend-entry";
    entry.dataset.label = s.label;
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.backgroundColor = SERIES_COLORS[i % SERIES_COLORS.length];
    entry.append(swatch, document.createTextNode(s.label));
    legend.appendChild(entry);
  });
  container.appendChild(legend);
}
