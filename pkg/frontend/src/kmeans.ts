/** Portable k-means (k-means++ seeding, Lloyd iterations).
 *
 * Mirrors the analysis pipeline's implementation operation for operation:
 * same RNG, same accumulation order, same tie-breaking (lowest centroid
 * index) and empty-cluster rule (keep previous centroid), so assignments
 * computed in the browser equal the ones baked into the bundle. */

import { SplitMix64 } from "./rng.js";

export interface KMeansResult {
  assignments: number[];
  centroids: number[][];
  inertia: number;
  inertiaHistory: number[];
}

function sqdist(a: number[], b: number[]): number {
  let acc = 0;
  for (let i = 0; i < a.length; i++) {
    const diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

export function kmeansLloyd(
  features: number[][],
  k: number,
  seed: number,
  maxIter = 100,
): KMeansResult {
  const n = features.length;
  if (k < 1 || k > n) throw new Error(`k must be in [1, ${n}]`);
  const rng = new SplitMix64(seed);

  const first = Math.min(Math.floor(rng.nextFloat() * n), n - 1);
  const centroids: number[][] = [features[first].slice()];
  while (centroids.length < k) {
    const d2 = features.map((f) => {
      let best = sqdist(f, centroids[0]);
      for (let c = 1; c < centroids.length; c++) {
        const d = sqdist(f, centroids[c]);
        if (d < best) best = d;
      }
      return best;
    });
    let total = 0;
    for (const v of d2) total += v;
    let idx: number;
    if (total === 0) {
      idx = (first + centroids.length) % n;
    } else {
      const r = rng.nextFloat() * total;
      idx = n - 1;
      let acc = 0;
      for (let i = 0; i < d2.length; i++) {
        acc += d2[i];
        if (r < acc) {
          idx = i;
          break;
        }
      }
    }
    centroids.push(features[idx].slice());
  }

  let assignments: number[] = new Array(n).fill(-1);
  const history: number[] = [];
  for (let iter = 0; iter < maxIter; iter++) {
    let inertia = 0;
    const next: number[] = [];
    for (const f of features) {
      let bestC = 0;
      let bestD = sqdist(f, centroids[0]);
      for (let c = 1; c < k; c++) {
        const d = sqdist(f, centroids[c]);
        if (d < bestD) {
          bestC = c;
          bestD = d;
        }
      }
      next.push(bestC);
      inertia += bestD;
    }
    history.push(inertia);
    if (next.length === assignments.length && next.every((v, i) => v === assignments[i])) {
      break;
    }
    assignments = next;
    const dim = features[0].length;
    for (let c = 0; c < k; c++) {
      const members = features.filter((_, i) => assignments[i] === c);
      if (members.length > 0) {
        centroids[c] = [];
        for (let d = 0; d < dim; d++) {
          let s = 0;
          for (const f of members) s += f[d];
          centroids[c].push(s / members.length);
        }
      }
    }
  }

  return {
    assignments,
    centroids,
    inertia: history[history.length - 1],
    inertiaHistory: history,
  };
}
