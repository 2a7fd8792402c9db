import { describe, expect, it } from "vitest";

import { kmeansLloyd } from "../src/kmeans.js";
import { SplitMix64 } from "../src/rng.js";
import { periodFeatures, recluster } from "../src/state.js";
import { parseBundle } from "../src/types.js";
import { fixtureText } from "./bundle.test.js";

describe("SplitMix64", () => {
  it("produces the reference sequence for seed 0", () => {
    // first outputs of splitmix64(0), the cross-language anchor
    const rng = new SplitMix64(0);
    expect(rng.nextU64()).toBe(0xe220a8397b1dcdafn);
    expect(rng.nextU64()).toBe(0x6e789e6aa1b965f4n);
    expect(rng.nextU64()).toBe(0x06c45d188009454fn);
  });

  it("floats live in [0, 1)", () => {
    const rng = new SplitMix64(123);
    for (let i = 0; i < 1000; i++) {
      const v = rng.nextFloat();
      expect(v).toBeGreaterThanOrEqual(0);
      expect(v).toBeLessThan(1);
    }
  });
});

describe("kmeansLloyd", () => {
  it("gives zero inertia when k equals the point count", () => {
    const res = kmeansLloyd([[0, 0], [5, 1], [9, 9]], 3, 1);
    expect(res.inertia).toBe(0);
    expect([...res.assignments].sort()).toEqual([0, 1, 2]);
  });

  it("k=1 centroid is the componentwise mean", () => {
    const res = kmeansLloyd([[0, 2], [2, 4], [4, 0]], 1, 1);
    expect(res.centroids[0]).toEqual([2, 2]);
  });

  it("separates two far groups", () => {
    const feats = [
      [0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0],
      [10, 10, 10], [10, 10, 10], [10, 10, 10], [10, 10, 10],
    ];
    const res = kmeansLloyd(feats, 2, 7);
    expect(new Set(res.assignments.slice(0, 4)).size).toBe(1);
    expect(new Set(res.assignments.slice(4)).size).toBe(1);
    expect(res.assignments[0]).not.toBe(res.assignments[4]);
    expect(res.inertia).toBe(0);
  });

  it("inertia never increases across iterations", () => {
    const rng = new SplitMix64(42);
    const feats = Array.from({ length: 20 }, () =>
      Array.from({ length: 4 }, () => rng.nextFloat() * 10),
    );
    const res = kmeansLloyd(feats, 3, 9);
    for (let i = 1; i < res.inertiaHistory.length; i++) {
      expect(res.inertiaHistory[i]).toBeLessThanOrEqual(res.inertiaHistory[i - 1] + 1e-12);
    }
  });

  it("rejects k above the point count", () => {
    expect(() => kmeansLloyd([[0]], 2, 0)).toThrow();
  });
});

describe("CLI parity on the shared fixture", () => {
  it("reclustering with the bundle's own (period 7, k 2, seed 7) reproduces its cluster ids", () => {
    const bundle = parseBundle(fixtureText());
    expect(bundle.config.period).toBe(7);
    expect(bundle.config.k).toBe(2);
    expect(bundle.config.seed).toBe(7);
    const clusters = recluster(bundle, bundle.config.period, bundle.config.k, bundle.config.seed);
    for (const inst of bundle.instances) {
      expect(clusters.get(inst.id)).toBe(inst.cluster);
    }
    // the fixture's two weeks land in different clusters
    expect(clusters.get(0)).not.toBe(clusters.get(7));
    expect(clusters.get(14)).toBeNull();
  });

  it("full periods feed fixed-length feature vectors", () => {
    const bundle = parseBundle(fixtureText());
    const { features, fullStart } = periodFeatures(bundle, 7);
    expect(features.length).toBe(2);
    expect(fullStart).toEqual([0, 7]);
    for (const f of features) expect(f.length).toBe(7);
  });
});
