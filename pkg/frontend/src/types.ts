/** Bundle schema produced by the analysis CLI, plus parsing/validation. */

export const SUPPORTED_SCHEMA_VERSION = 1;

export interface DiagramData {
  finite: [number, number][];
  essential: number[];
}

export interface InstanceData {
  id: number;
  window: [number, number];
  midpoint: number;
  vertices: { id: string; category?: string }[];
  edges: [string, string, number][];
  diagrams: { [dim: string]: DiagramData };
  mds: number[];
  period: number;
  cluster: number | null;
  colormap: { hour_of_day: number; day_of_week: number };
}

export interface Bundle {
  schema_version: number;
  dataset: { [key: string]: unknown };
  config: {
    metric: string;
    dim: number;
    distance: string;
    period: number;
    k: number;
    seed: number;
    [key: string]: unknown;
  };
  instances: InstanceData[];
  distance_matrix: number[][];
}

export class BundleError extends Error {}

function fail(message: string): never {
  throw new BundleError(message);
}

/** Parse and validate bundle JSON text. Throws BundleError on anything the
 * viewer cannot render. */
export function parseBundle(text: string): Bundle {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    fail(`not valid JSON: ${(err as Error).message}`);
  }
  const obj = raw as Partial<Bundle>;
  if (typeof obj !== "object" || obj === null) fail("bundle must be an object");
  if (obj.schema_version !== SUPPORTED_SCHEMA_VERSION) {
    fail(`unsupported schema version ${obj.schema_version}`);
  }
  if (!Array.isArray(obj.instances)) fail("bundle has no instances array");
  if (!Array.isArray(obj.distance_matrix)) fail("bundle has no distance matrix");
  if (obj.distance_matrix.length !== obj.instances.length) {
    fail("distance matrix size does not match instance count");
  }
  if (typeof obj.config !== "object" || obj.config === null) fail("bundle has no config");
  obj.instances.forEach((inst, i) => {
    if (inst.id !== i) fail(`instance ids must be 0..n-1 in order (got ${inst.id} at ${i})`);
    for (const key of ["window", "vertices", "edges", "diagrams", "mds", "colormap"]) {
      if (!(key in inst)) fail(`instance ${i} misses field ${key}`);
    }
    if (!("0" in inst.diagrams) || !("1" in inst.diagrams)) {
      fail(`instance ${i} misses a diagram dimension`);
    }
    if (!Array.isArray(inst.mds) || inst.mds.length === 0) {
      fail(`instance ${i} has no MDS coordinates`);
    }
  });
  return obj as Bundle;
}

export function diagramPointCount(d: DiagramData): number {
  return d.finite.length + d.essential.length;
}

/** Largest finite value in any diagram of the instance, for barcode axes. */
export function instanceRMax(inst: InstanceData): number {
  let top = 0;
  for (const dim of ["0", "1"]) {
    for (const [b, dth] of inst.diagrams[dim].finite) top = Math.max(top, b, dth);
    for (const b of inst.diagrams[dim].essential) top = Math.max(top, b);
  }
  return top;
}
