import type { GraphDoc, MethodHistory } from "./types.js";

const SVGNS = "http://www.w3.org/2000/svg";
const CELL_W = 72;
const CELL_H = 40;
const PAD_X = 28;
const PAD_Y = 26;

const ORIGIN_FILL: Record<string, string> = {
  initial: "#64748b",
  source_modification: "#2563eb",
  anomaly_fork: "#dc2626",
};

export type ForkClickHandler = (build: string, section: string) => void;

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVGNS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, v);
  }
  return node;
}

interface Placed {
  x: number;
  lane: number;
}

function renderMethod(
  method: string,
  hist: MethodHistory,
  onFork: ForkClickHandler,
): HTMLElement {
  const wrap = document.createElement("section");
  wrap.className = "method-lanes";
  wrap.dataset.method = method;

  const title = document.createElement("h3");
  title.textContent = method;
  wrap.appendChild(title);

  const steps = hist.steps;
  let lanes: number[] = [];
  let maxLanes = 1;
  const nodePos = new Map<number, Placed>(); // version ordinal -> creation spot
  const svgChildren: SVGElement[] = [];

  const cx = (x: number) => PAD_X + x * CELL_W;
  const cy = (lane: number) => PAD_Y + lane * CELL_H;

  steps.forEach((step, x) => {
    const o = step.outcome;
    const prevLanes = [...lanes];
    if (o.kind === "initial" || o.kind === "modified") {
      lanes = [o.version];
      if (o.kind === "modified" && prevLanes.length > 0) {
        for (let l = 0; l < prevLanes.length; l++) {
          svgChildren.push(el("line", {
            x1: String(cx(x - 1)), y1: String(cy(l)),
            x2: String(cx(x)), y2: String(cy(0)),
            class: prevLanes.length > 1 ? "edge merge-edge" : "edge",
          }));
        }
      }
      nodePos.set(o.version, { x, lane: 0 });
    } else if (o.kind === "fork") {
      const fromLane = Math.max(lanes.indexOf(o.from ?? -1), 0);
      lanes = [...lanes, o.version];
      const lane = lanes.length - 1;
      svgChildren.push(el("line", {
        x1: String(cx(x - 1)), y1: String(cy(fromLane)),
        x2: String(cx(x)), y2: String(cy(lane)),
        class: "edge fork-edge",
      }));
      nodePos.set(o.version, { x, lane });
    } else {
      // unchanged / reverted: continuation marker on the referenced lane
      const lane = Math.max(lanes.indexOf(o.version), 0);
      svgChildren.push(el("circle", {
        cx: String(cx(x)), cy: String(cy(lane)), r: "4",
        class: `tick kind-${o.kind}`,
      }));
    }
    // lane continuation lines from the previous column
    if (x > 0) {
      for (const v of lanes) {
        const before = prevLanes.indexOf(v);
        const now = lanes.indexOf(v);
        if (before >= 0 && now >= 0) {
          svgChildren.push(el("line", {
            x1: String(cx(x - 1)), y1: String(cy(before)),
            x2: String(cx(x)), y2: String(cy(now)),
            class: "edge",
          }));
        }
      }
    }
    maxLanes = Math.max(maxLanes, lanes.length);
  });

  const relevant = new Set(hist.openBranches);
  for (const node of hist.nodes) {
    const spot = nodePos.get(node.ordinal);
    if (!spot) continue;
    const isRelevant = relevant.has(node.ordinal);
    if (isRelevant) {
      svgChildren.push(el("rect", {
        x: String(cx(spot.x) - 13), y: String(cy(spot.lane) - 13),
        width: "26", height: "26",
        class: "relevant-box",
      }));
    }
    const circle = el("circle", {
      cx: String(cx(spot.x)), cy: String(cy(spot.lane)), r: "8",
      fill: ORIGIN_FILL[node.origin] ?? "#64748b",
      class: `node origin-${node.origin}` + (isRelevant ? " relevant" : ""),
      "data-version": node.label,
    });
    if (node.origin === "anomaly_fork") {
      circle.classList.add("fork-node");
      circle.dataset.build = node.createdBuild;
      circle.dataset.section = method;
      circle.addEventListener("click", () =>
        onFork(node.createdBuild, method));
    }
    const titleEl = document.createElementNS(SVGNS, "title");
    titleEl.textContent = `${node.label} (${node.origin}, build ${node.createdBuild})`;
    circle.appendChild(titleEl);
    svgChildren.push(circle);
    svgChildren.push(el("text", {
      x: String(cx(spot.x)), y: String(cy(spot.lane) + 22),
      class: "node-label",
      "text-anchor": "middle",
    }));
    const label = svgChildren[svgChildren.length - 1];
    label.textContent = node.label;
  }

  const width = PAD_X * 2 + Math.max(steps.length - 1, 0) * CELL_W + 30;
  const height = PAD_Y * 2 + (maxLanes - 1) * CELL_H + 18;
  const svg = el("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    class: "lane-svg",
  });
  for (const child of svgChildren) svg.appendChild(child);
  wrap.appendChild(svg);

  const tips = document.createElement("p");
  tips.className = "relevant-tips";
  tips.textContent =
    "relevant: " +
    [...hist.openBranches].sort((a, b) => a - b).map((o) => `${method}.V${o}`).join(", ");
  wrap.appendChild(tips);
  return wrap;
}

export function renderVersionGraph(
  container: HTMLElement,
  doc: GraphDoc,
  onFork: ForkClickHandler,
): void {
  container.replaceChildren();
  const methods = Object.entries(doc.methods);
  const hasSteps = methods.some(([, h]) => h.steps.length > 0);
  if (!hasSteps) {
    const empty = document.createElement("p");
    empty.className = "placeholder";
    empty.textContent = "no builds yet";
    container.appendChild(empty);
    return;
  }
  for (const [method, hist] of methods) {
    container.appendChild(renderMethod(method, hist, onFork));
  }
}
