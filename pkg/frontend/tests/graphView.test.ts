import { beforeEach, describe, expect, it, vi } from "vitest";

import { renderVersionGraph } from "../src/graphView.js";
import type { GraphDoc } from "../src/types.js";
import { fixtures } from "./fixtures.js";

const graphDoc = fixtures.graph as unknown as GraphDoc;

let container: HTMLElement;

beforeEach(() => {
  container = document.createElement("div");
  document.body.replaceChildren(container);
});

describe("version graph view", () => {
  it("renders one lane group per method", () => {
    renderVersionGraph(container, graphDoc, () => {});
    const methods = [...container.querySelectorAll(".method-lanes")].map(
      (el) => (el as HTMLElement).dataset.method,
    );
    expect(methods).toEqual(["M", "B0", "B1"]);
  });

  it("highlights both open B1 tips after the replay", () => {
    renderVersionGraph(container, graphDoc, () => {});
    const relevant = container.querySelectorAll(
      '[data-method="B1"] circle.node.relevant',
    );
    expect(relevant.length).toBe(2);
    const labels = [...relevant].map((c) => c.getAttribute("data-version"));
    expect(labels.sort()).toEqual(["B1.V0", "B1.V1"]);
  });

  it("shows B0 merged into a single relevant modification node", () => {
    renderVersionGraph(container, graphDoc, () => {});
    const relevant = container.querySelectorAll(
      '[data-method="B0"] circle.node.relevant',
    );
    expect(relevant.length).toBe(1);
    expect(relevant[0].classList.contains("origin-source_modification")).toBe(true);
    expect(relevant[0].getAttribute("data-version")).toBe("B0.V2");
    const merges = container.querySelectorAll('[data-method="B0"] .merge-edge');
    expect(merges.length).toBeGreaterThan(1);
  });

  it("draws fork edges for anomaly forks", () => {
    renderVersionGraph(container, graphDoc, () => {});
    expect(
      container.querySelectorAll('[data-method="B0"] .fork-edge').length,
    ).toBe(1);
    expect(
      container.querySelectorAll('[data-method="B1"] .fork-edge').length,
    ).toBe(1);
  });

  it("opens the anomaly view when a fork node is clicked", () => {
    const onFork = vi.fn();
    renderVersionGraph(container, graphDoc, onFork);
    const fork = container.querySelector(
      '[data-method="B1"] circle.fork-node',
    ) as SVGCircleElement;
    expect(fork.dataset.build).toBe("build3");
    fork.dispatchEvent(new MouseEvent("click"));
    expect(onFork).toHaveBeenCalledWith("build3", "B1");
  });

  it("marks the relevant tips in text form", () => {
    renderVersionGraph(container, graphDoc, () => {});
    const tips = container.querySelector(
      '[data-method="B1"] .relevant-tips',
    )!.textContent;
    expect(tips).toBe("relevant: B1.V0, B1.V1");
  });

  it("renders a placeholder for an empty graph", () => {
    renderVersionGraph(
      container,
      { schema: 1, methods: { M: { nodes: [], steps: [], openBranches: [] } } },
      () => {},
    );
    expect(container.textContent).toContain("no builds yet");
  });

  it("renders a single highlighted node for a fresh project", () => {
    renderVersionGraph(
      container,
      {
        schema: 1,
        methods: {
          X: {
            nodes: [{ ordinal: 0, label: "X.V0", createdBuild: "b0", origin: "initial" }],
            steps: [{ build: "b0", outcome: { kind: "initial", version: 0 } }],
            openBranches: [0],
          },
        },
      },
      () => {},
    );
    const nodes = container.querySelectorAll("circle.node");
    expect(nodes.length).toBe(1);
    expect(nodes[0].classList.contains("relevant")).toBe(true);
  });

  it("is a pure function of the payload", () => {
    renderVersionGraph(container, graphDoc, () => {});
    const first = container.innerHTML;
    renderVersionGraph(container, graphDoc, () => {});
    expect(container.innerHTML).toBe(first);
  });
});
