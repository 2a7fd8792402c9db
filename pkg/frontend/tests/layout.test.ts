import { describe, expect, it } from "vitest";

import { barsForInstance } from "../src/barcode.js";
import { initialLayout, REST_LENGTH, runLayout } from "../src/layout.js";
import { diagramPointCount, InstanceData, parseBundle } from "../src/types.js";
import { fixtureText } from "./bundle.test.js";

function instance(partial: Partial<InstanceData>): InstanceData {
  return {
    id: 0,
    window: [0, 1],
    midpoint: 0.5,
    vertices: [{ id: "a" }],
    edges: [],
    diagrams: { "0": { finite: [], essential: [0] }, "1": { finite: [], essential: [] } },
    mds: [0],
    period: 0,
    cluster: null,
    colormap: { hour_of_day: 0, day_of_week: 0 },
    ...partial,
  };
}

describe("force layout", () => {
  it("a single node sits at the canvas center", () => {
    const graph = runLayout(instance({}), 7);
    expect(graph.nodes.length).toBe(1);
    expect(graph.nodes[0].x).toBe(0);
    expect(graph.nodes[0].y).toBe(0);
  });

  it("two connected nodes settle near the rest length", () => {
    const inst = instance({
      vertices: [{ id: "a" }, { id: "b" }],
      edges: [["a", "b", 1.0]],
    });
    const graph = runLayout(inst, 7, 600);
    const [a, b] = graph.nodes;
    const dist = Math.hypot(a.x - b.x, a.y - b.y);
    expect(Math.abs(dist - REST_LENGTH)).toBeLessThan(0.1 * REST_LENGTH);
  });

  it("identical seeds give identical coordinates, different seeds differ", () => {
    const bundle = parseBundle(fixtureText());
    const inst = bundle.instances[0];
    const a = runLayout(inst, 7);
    const b = runLayout(inst, 7);
    expect(b.nodes).toEqual(a.nodes);
    const c = runLayout(inst, 8);
    expect(c.nodes).not.toEqual(a.nodes);
  });

  it("initial positions are seeded and categories carried through", () => {
    const inst = instance({
      vertices: [
        { id: "a", category: "staff" },
        { id: "b", category: "student" },
      ],
      edges: [["a", "b", 2.0]],
    });
    const graph = initialLayout(inst, 3);
    expect(graph.nodes[0].category).toBe("staff");
    expect(graph.edges[0]).toEqual({ source: 0, target: 1, weight: 2.0 });
  });
});

describe("barcode marks", () => {
  it("bar count equals the diagram point count for every fixture instance", () => {
    const bundle = parseBundle(fixtureText());
    for (const inst of bundle.instances) {
      const bars = barsForInstance(inst);
      const expected =
        diagramPointCount(inst.diagrams["0"]) + diagramPointCount(inst.diagrams["1"]);
      expect(bars.length).toBe(expected);
    }
  });

  it("essential classes render as open bars up to r_max", () => {
    const inst = instance({});
    const bars = barsForInstance(inst);
    expect(bars.length).toBe(1);
    expect(bars[0].open).toBe(true);
  });

  it("bars sort by (dim, start, end)", () => {
    const bundle = parseBundle(fixtureText());
    for (const inst of bundle.instances) {
      const bars = barsForInstance(inst);
      for (let i = 1; i < bars.length; i++) {
        const prev = bars[i - 1];
        const cur = bars[i];
        const key = (b: typeof cur) => [b.dim, b.start, b.end];
        expect(key(prev) <= key(cur)).toBe(true);
      }
    }
  });
});
