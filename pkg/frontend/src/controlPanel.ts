import { api, RequestFailed } from "./api.js";
import type { BuildReportDoc, Outcome, RunReportDoc } from "./types.js";

export interface ControlPanelOptions {
  onRefresh: () => Promise<void>;
  onOpenAnomaly: (build: string, section: string) => void;
}

function describeOutcome(method: string, o: Outcome): string {
  const label = o.label ?? `${method}.V${o.version}`;
  if (o.kind === "fork") {
    return `${method}: fork ${label} from ${method}.V${o.from}`;
  }
  return `${method}: ${o.kind} ${label}`;
}

export function setupControlPanel(
  root: HTMLElement,
  options: ControlPanelOptions,
): { metric: () => string; param: () => string } {
  root.replaceChildren();

  const buildBtn = document.createElement("button");
  buildBtn.id = "btn-build";
  buildBtn.textContent = "Build";

  const runBtn = document.createElement("button");
  runBtn.id = "btn-run";
  runBtn.textContent = "Run";

  const metricInput = document.createElement("input");
  metricInput.id = "metric";
  metricInput.value = "runtime";
  const paramInput = document.createElement("input");
  paramInput.id = "param";
  paramInput.value = "selectivity";

  const metricLabel = document.createElement("label");
  metricLabel.append("metric ", metricInput);
  const paramLabel = document.createElement("label");
  paramLabel.append("param ", paramInput);

  const status = document.createElement("div");
  status.id = "status";
  status.className = "status";

  root.append(buildBtn, runBtn, metricLabel, paramLabel, status);

  let busy = false;

  function setStatus(text: string, isError = false) {
    status.textContent = text;
    status.classList.toggle("error", isError);
  }

  function showOutcomes(report: BuildReportDoc | RunReportDoc) {
    const list = document.createElement("ul");
    list.className = "outcome-list";
    for (const [method, o] of Object.entries(report.outcomes)) {
      const item = document.createElement("li");
      item.dataset.kind = o.kind;
      item.textContent = describeOutcome(method, o);
      if (o.kind === "fork") {
        const link = document.createElement("a");
        link.href = "#";
        link.className = "anomaly-link";
        link.textContent = "inspect";
        link.addEventListener("click", (ev) => {
          ev.preventDefault();
          options.onOpenAnomaly(report.build, method);
        });
        item.append(" ", link);
      }
      list.appendChild(item);
    }
    status.replaceChildren(list);
    status.classList.remove("error");
  }

  async function mutate(kind: "build" | "run") {
    if (busy) return;
    busy = true;
    buildBtn.disabled = runBtn.disabled = true;
    setStatus(kind === "build" ? "building..." : "running...");
    try {
      const report = kind === "build" ? await api.build() : await api.run();
      showOutcomes(report);
      await options.onRefresh();
    } catch (err) {
      if (err instanceof RequestFailed && err.status === 409) {
        setStatus(`${err.body.error}: ${err.body.detail}`, true);
      } else if (err instanceof RequestFailed) {
        setStatus(`${err.body.error}: ${err.body.detail}`, true);
      } else {
        setStatus(String(err), true);
      }
    } finally {
      busy = false;
      buildBtn.disabled = runBtn.disabled = false;
    }
  }

  buildBtn.addEventListener("click", () => void mutate("build"));
  runBtn.addEventListener("click", () => void mutate("run"));

  const refreshOnChange = () => void options.onRefresh();
  metricInput.addEventListener("change", refreshOnChange);
  paramInput.addEventListener("change", refreshOnChange);

  return {
    metric: () => metricInput.value || "runtime",
    param: () => paramInput.value || "selectivity",
  };
}
