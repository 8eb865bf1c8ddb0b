import { api, RequestFailed } from "./api.js";
import { renderAnomaly, renderNoAnomaly } from "./anomalyView.js";
import { renderResultsChart } from "./chartView.js";
import { setupControlPanel } from "./controlPanel.js";
import { renderVersionGraph } from "./graphView.js";

function banner(container: HTMLElement, message: string) {
  container.replaceChildren();
  const div = document.createElement("div");
  div.className = "error-banner";
  div.textContent = message;
  container.appendChild(div);
}

export function boot(root: HTMLElement): void {
  root.innerHTML = `
    <header>
      <h1>mvee</h1>
      <div id="controls"></div>
    </header>
    <main>
      <section id="graph-section">
        <h2>Version graph</h2>
        <div id="graph"></div>
      </section>
      <section id="chart-section">
        <h2>Results (all relevant versions)</h2>
        <div id="chart"></div>
      </section>
      <section id="anomaly-section" hidden>
        <div id="anomaly"></div>
      </section>
    </main>
  `;

  const graphEl = root.querySelector<HTMLElement>("#graph")!;
  const chartEl = root.querySelector<HTMLElement>("#chart")!;
  const anomalySection = root.querySelector<HTMLElement>("#anomaly-section")!;
  const anomalyEl = root.querySelector<HTMLElement>("#anomaly")!;

  async function openAnomaly(build: string, section: string) {
    anomalySection.hidden = false;
    try {
      const doc = await api.anomaly(build, section);
      renderAnomaly(anomalyEl, doc);
    } catch (err) {
      if (err instanceof RequestFailed && err.status === 404) {
        renderNoAnomaly(anomalyEl, err.body.detail);
      } else {
        banner(anomalyEl, String(err));
      }
    }
    anomalySection.scrollIntoView?.({ behavior: "smooth" });
  }

  const controls = setupControlPanel(
    root.querySelector<HTMLElement>("#controls")!,
    { onRefresh: refresh, onOpenAnomaly: openAnomaly },
  );

  async function refresh(): Promise<void> {
    try {
      const graph = await api.graph();
      renderVersionGraph(graphEl, graph, openAnomaly);
    } catch (err) {
      banner(graphEl, `cannot load version graph: ${String(err)}`);
    }
    try {
      const results = await api.results(controls.metric(), controls.param());
      renderResultsChart(chartEl, results);
    } catch (err) {
      if (err instanceof RequestFailed && err.status === 404) {
        chartEl.replaceChildren();
        const note = document.createElement("p");
        note.className = "placeholder";
        note.textContent = err.body.detail;
        chartEl.appendChild(note);
      } else {
        banner(chartEl, `cannot load results: ${String(err)}`);
      }
    }
  }

  void refresh();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot(document.getElementById("app")!);
}
