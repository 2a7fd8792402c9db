/** Barcode geometry for one instance: one bar per diagram point, open-ended
 * bars for classes that never die (drawn up to the instance r_max). */

import { DiagramData, InstanceData, instanceRMax } from "./types.js";

export interface BarMark {
  dim: number;
  start: number;
  end: number;
  open: boolean;
}

export function barsForDiagram(diagram: DiagramData, dim: number, rMax: number): BarMark[] {
  const bars: BarMark[] = [];
  for (const [b, d] of diagram.finite) bars.push({ dim, start: b, end: d, open: false });
  for (const b of diagram.essential) bars.push({ dim, start: b, end: rMax, open: true });
  bars.sort((a, b) => a.dim - b.dim || a.start - b.start || a.end - b.end);
  return bars;
}

export function barsForInstance(inst: InstanceData): BarMark[] {
  const rMax = instanceRMax(inst);
  return [
    ...barsForDiagram(inst.diagrams["0"], 0, rMax),
    ...barsForDiagram(inst.diagrams["1"], 1, rMax),
  ];
}
