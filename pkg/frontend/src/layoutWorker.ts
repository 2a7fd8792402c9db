/** Background worker running the force layout and posting frames so the UI
 * thread stays responsive. Messages:
 *   in:  { type: "layout", instance, seed, iterations }
 *   out: { type: "frame" | "done", nodes: [...], iteration }
 */

import { runLayout } from "./layout.js";
import { InstanceData } from "./types.js";

interface LayoutRequest {
  type: "layout";
  instance: InstanceData;
  seed: number;
  iterations: number;
}

// typed locally: lib.dom and lib.webworker cannot share one compilation
const worker = self as unknown as {
  onmessage: ((ev: MessageEvent<LayoutRequest>) => void) | null;
  postMessage(data: unknown): void;
};

worker.onmessage = (ev: MessageEvent<LayoutRequest>) => {
  const msg = ev.data;
  if (msg.type !== "layout") return;
  const graph = runLayout(msg.instance, msg.seed, msg.iterations, (g, iteration) => {
    worker.postMessage({ type: "frame", nodes: g.nodes, iteration });
  });
  worker.postMessage({ type: "done", nodes: graph.nodes, edges: graph.edges });
};
