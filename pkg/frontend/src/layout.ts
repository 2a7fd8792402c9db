/** Deterministic spring-electric force layout for the node-link instance
 * view. Seeded initial positions, fixed iteration cap, cooling step: the
 * same seed always yields the same coordinates. Runs synchronously here;
 * the worker wrapper posts intermediate frames. */

import { SplitMix64 } from "./rng.js";
import { InstanceData } from "./types.js";

export interface LayoutNode {
  id: string;
  x: number;
  y: number;
  category?: string;
}

export interface LayoutEdge {
  source: number;
  target: number;
  weight: number;
}

export interface LayoutGraph {
  nodes: LayoutNode[];
  edges: LayoutEdge[];
}

export const REST_LENGTH = 1.0;
export const DEFAULT_ITERATIONS = 300;

export function initialLayout(inst: InstanceData, seed: number): LayoutGraph {
  const rng = new SplitMix64(seed);
  const index = new Map(inst.vertices.map((v, i) => [v.id, i]));
  const nodes: LayoutNode[] = inst.vertices.map((v) => ({
    id: v.id,
    category: v.category,
    x: rng.nextFloat() * 2 - 1,
    y: rng.nextFloat() * 2 - 1,
  }));
  if (nodes.length === 1) {
    nodes[0].x = 0;
    nodes[0].y = 0;
  }
  const edges: LayoutEdge[] = inst.edges.map(([u, v, w]) => ({
    source: index.get(u)!,
    target: index.get(v)!,
    weight: w,
  }));
  return { nodes, edges };
}

/** One spring-electric iteration; `temperature` caps the displacement. */
export function layoutStep(graph: LayoutGraph, temperature: number): void {
  const { nodes, edges } = graph;
  const n = nodes.length;
  if (n <= 1) return;
  const k = REST_LENGTH;
  const fx = new Array<number>(n).fill(0);
  const fy = new Array<number>(n).fill(0);

  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) {
      let dx = nodes[i].x - nodes[j].x;
      let dy = nodes[i].y - nodes[j].y;
      let d2 = dx * dx + dy * dy;
      if (d2 < 1e-9) {
        // nudge coincident nodes apart deterministically
        dx = 1e-4 * (i - j);
        dy = 1e-4;
        d2 = dx * dx + dy * dy;
      }
      const d = Math.sqrt(d2);
      const rep = (k * k) / d;
      fx[i] += (dx / d) * rep;
      fy[i] += (dy / d) * rep;
      fx[j] -= (dx / d) * rep;
      fy[j] -= (dy / d) * rep;
    }
  }
  for (const e of edges) {
    const a = nodes[e.source];
    const b = nodes[e.target];
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const d = Math.sqrt(dx * dx + dy * dy) || 1e-9;
    const att = (d * d) / k;
    fx[e.source] += (dx / d) * att;
    fy[e.source] += (dy / d) * att;
    fx[e.target] -= (dx / d) * att;
    fy[e.target] -= (dy / d) * att;
  }
  for (let i = 0; i < n; i++) {
    const f = Math.sqrt(fx[i] * fx[i] + fy[i] * fy[i]);
    if (f > 0) {
      const step = Math.min(f, temperature);
      nodes[i].x += (fx[i] / f) * step;
      nodes[i].y += (fy[i] / f) * step;
    }
  }
}

export function runLayout(
  inst: InstanceData,
  seed: number,
  iterations = DEFAULT_ITERATIONS,
  onFrame?: (graph: LayoutGraph, iteration: number) => void,
): LayoutGraph {
  const graph = initialLayout(inst, seed);
  const t0 = 0.1 * Math.max(Math.sqrt(graph.nodes.length), 1);
  for (let i = 0; i < iterations; i++) {
    const temperature = t0 * (1 - i / iterations);
    layoutStep(graph, temperature);
    if (onFrame && i % 10 === 9) onFrame(graph, i);
  }
  return graph;
}
