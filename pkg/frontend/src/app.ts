/** Application wiring: file loading, controls, and view refresh. All state
 * changes flow through the store's reducer; rendering is a pure function of
 * the resulting state. */

import { barsForInstance } from "./barcode.js";
import { ColormapKind } from "./colormap.js";
import { LayoutGraph, runLayout, DEFAULT_ITERATIONS } from "./layout.js";
import { renderBarcode, renderLegend, renderNodeLink, renderTimeline } from "./render.js";
import { Store } from "./state.js";
import { computeTimelineMarks } from "./timeline.js";
import { instanceRMax, parseBundle } from "./types.js";

const store = new Store();

function byId<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function loadText(text: string): void {
  try {
    const bundle = parseBundle(text);
    store.dispatch({ type: "bundle-loaded", bundle });
  } catch (err) {
    store.dispatch({ type: "bundle-failed", message: (err as Error).message });
  }
}

function renderInstancePanels(state: ReturnType<Store["get"]>): void {
  const host = byId<HTMLDivElement>("instances");
  host.replaceChildren();
  if (!state.bundle) return;
  for (const id of state.selected) {
    const inst = state.bundle.instances[id];
    const panel = document.createElement("div");
    panel.className = "instance-panel";
    const head = document.createElement("h3");
    head.textContent = `instance ${id} (${inst.vertices.length} vertices, ${inst.edges.length} edges)`;
    const close = document.createElement("button");
    close.textContent = "clear selection";
    close.addEventListener("click", () => {
      store.dispatch({ type: "clear-selection" });
    });
    const note = document.createElement("input");
    note.placeholder = "annotation...";
    note.value = state.annotations.get(id) ?? "";
    note.addEventListener("change", () => {
      store.dispatch({ type: "annotate", id, text: note.value });
    });

    const graphSvg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    graphSvg.setAttribute("class", "nodelink");
    const barcodeSvg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    barcodeSvg.setAttribute("class", "barcode");
    panel.append(head, close, note, graphSvg, barcodeSvg);
    host.appendChild(panel);

    renderBarcode(barcodeSvg, barsForInstance(inst), instanceRMax(inst));

    // layout runs in a worker when available, posting frames as it cools
    if (typeof Worker !== "undefined") {
      const worker = new Worker(new URL("./layoutWorker.js", import.meta.url), {
        type: "module",
      });
      worker.onmessage = (ev: MessageEvent<{ type: string; nodes: LayoutGraph["nodes"] }>) => {
        const graph = {
          nodes: ev.data.nodes,
          edges: inst.edges.map(([u, v, w]) => ({
            source: inst.vertices.findIndex((x) => x.id === u),
            target: inst.vertices.findIndex((x) => x.id === v),
            weight: w,
          })),
        };
        renderNodeLink(graphSvg, graph);
        if (ev.data.type === "done") worker.terminate();
      };
      worker.postMessage({
        type: "layout",
        instance: inst,
        seed: state.layoutSeed,
        iterations: DEFAULT_ITERATIONS,
      });
    } else {
      renderNodeLink(graphSvg, runLayout(inst, state.layoutSeed));
    }
  }
}

function refresh(): void {
  const state = store.get();
  const banner = byId<HTMLDivElement>("banner");
  banner.textContent = state.error ?? state.validationMessage ?? "";
  banner.style.display = banner.textContent ? "block" : "none";

  const status = byId<HTMLSpanElement>("status");
  status.textContent = state.bundle
    ? `${state.bundle.instances.length} instances | metric ${state.bundle.config.metric}, ` +
      `dim ${state.bundle.config.dim}, ${state.bundle.config.distance}`
    : "no bundle loaded";

  const splitPeriods = byId<HTMLInputElement>("split-periods").checked;
  const marks = computeTimelineMarks(state, splitPeriods);
  renderTimeline(byId<HTMLElement>("timeline") as unknown as SVGSVGElement, marks, (id) => {
    store.dispatch({ type: "select", id });
  });
  renderLegend(byId<HTMLDivElement>("legend"), marks);
  renderInstancePanels(state);
}

export function init(): void {
  store.subscribe(refresh);

  byId<HTMLInputElement>("file-input").addEventListener("change", async (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (file) loadText(await file.text());
  });

  byId<HTMLSelectElement>("colormap").addEventListener("change", (ev) => {
    const kind = (ev.target as HTMLSelectElement).value as ColormapKind;
    store.dispatch({ type: "set-colormap", kind });
  });

  byId<HTMLInputElement>("split-periods").addEventListener("change", refresh);
  byId<HTMLInputElement>("cluster-mode").addEventListener("change", () => {
    store.dispatch({ type: "toggle-cluster-mode" });
  });

  byId<HTMLButtonElement>("recluster").addEventListener("click", () => {
    const periodLength = Number(byId<HTMLInputElement>("period-length").value);
    const k = Number(byId<HTMLInputElement>("cluster-k").value);
    store.dispatch({ type: "recluster", periodLength, k });
  });

  // default bundle next to the page, if any
  fetch("fixtures/bundle.json")
    .then((r) => (r.ok ? r.text() : Promise.reject()))
    .then(loadText)
    .catch(() => undefined);

  refresh();
}

init();
