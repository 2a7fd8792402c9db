/** View state and the single reducer every UI transition goes through.
 * The loaded bundle is treated as immutable; reclustering keeps its results
 * in a separate overlay map so reloading restores the initial state exactly. */

import { kmeansLloyd } from "./kmeans.js";
import { Bundle } from "./types.js";
import { ColormapKind } from "./colormap.js";

export interface ViewState {
  bundle: Bundle | null;
  error: string | null;
  selected: number[];
  colormap: ColormapKind;
  periodLength: number;
  k: number;
  layoutSeed: number;
  /** instance id -> cluster id; overlays the bundle's stored clusters */
  clusters: Map<number, number | null>;
  clusterMode: boolean;
  validationMessage: string | null;
  annotations: Map<number, string>;
}

export type Action =
  | { type: "bundle-loaded"; bundle: Bundle }
  | { type: "bundle-failed"; message: string }
  | { type: "select"; id: number }
  | { type: "clear-selection" }
  | { type: "set-colormap"; kind: ColormapKind }
  | { type: "toggle-cluster-mode" }
  | { type: "recluster"; periodLength: number; k: number }
  | { type: "annotate"; id: number; text: string }
  | { type: "set-layout-seed"; seed: number };

export function initialState(): ViewState {
  return {
    bundle: null,
    error: null,
    selected: [],
    colormap: "hour-of-day",
    periodLength: 7,
    k: 2,
    layoutSeed: 7,
    clusters: new Map(),
    clusterMode: false,
    validationMessage: null,
    annotations: new Map(),
  };
}

function clustersFromBundle(bundle: Bundle): Map<number, number | null> {
  return new Map(bundle.instances.map((inst) => [inst.id, inst.cluster]));
}

/** Series of first MDS coordinates chopped into periods; only full periods
 * are clustered, the partial tail keeps cluster null. */
export function periodFeatures(
  bundle: Bundle,
  periodLength: number,
): { features: number[][]; fullStart: number[] } {
  const series = bundle.instances.map((inst) => inst.mds[0]);
  const features: number[][] = [];
  const fullStart: number[] = [];
  for (let start = 0; start + periodLength <= series.length; start += periodLength) {
    features.push(series.slice(start, start + periodLength));
    fullStart.push(start);
  }
  return { features, fullStart };
}

export function recluster(
  bundle: Bundle,
  periodLength: number,
  k: number,
  seed: number,
): Map<number, number | null> {
  const { features, fullStart } = periodFeatures(bundle, periodLength);
  if (k > features.length) {
    throw new Error(`k=${k} exceeds the ${features.length} full periods`);
  }
  const result = kmeansLloyd(features, k, seed);
  const clusters = new Map<number, number | null>(
    bundle.instances.map((inst) => [inst.id, null]),
  );
  fullStart.forEach((start, seg) => {
    for (let i = start; i < start + periodLength; i++) {
      clusters.set(bundle.instances[i].id, result.assignments[seg]);
    }
  });
  return clusters;
}

export function reduce(state: ViewState, action: Action): ViewState {
  switch (action.type) {
    case "bundle-loaded": {
      const fresh = initialState();
      return {
        ...fresh,
        bundle: action.bundle,
        periodLength: action.bundle.config.period,
        k: action.bundle.config.k,
        layoutSeed: action.bundle.config.seed,
        clusters: clustersFromBundle(action.bundle),
      };
    }
    case "bundle-failed":
      return { ...initialState(), error: action.message };
    case "select": {
      if (!state.bundle || !state.bundle.instances.some((i) => i.id === action.id)) {
        return state;
      }
      const selected = state.selected.includes(action.id)
        ? state.selected
        : [...state.selected, action.id];
      return { ...state, selected };
    }
    case "clear-selection":
      return { ...state, selected: [] };
    case "set-colormap":
      return { ...state, colormap: action.kind };
    case "toggle-cluster-mode":
      return { ...state, clusterMode: !state.clusterMode };
    case "recluster": {
      if (!state.bundle) return state;
      if (action.periodLength < 1) {
        return { ...state, validationMessage: "period length must be at least 1" };
      }
      try {
        const clusters = recluster(
          state.bundle,
          action.periodLength,
          action.k,
          state.bundle.config.seed,
        );
        return {
          ...state,
          clusters,
          periodLength: action.periodLength,
          k: action.k,
          validationMessage: null,
        };
      } catch (err) {
        return { ...state, validationMessage: (err as Error).message };
      }
    }
    case "annotate": {
      const annotations = new Map(state.annotations);
      annotations.set(action.id, action.text);
      return { ...state, annotations };
    }
    case "set-layout-seed":
      return { ...state, layoutSeed: action.seed };
  }
}

export class Store {
  private state: ViewState = initialState();
  private listeners: ((s: ViewState) => void)[] = [];

  get(): ViewState {
    return this.state;
  }

  dispatch(action: Action): ViewState {
    this.state = reduce(this.state, action);
    for (const fn of this.listeners) fn(this.state);
    return this.state;
  }

  subscribe(fn: (s: ViewState) => void): void {
    this.listeners.push(fn);
  }
}
