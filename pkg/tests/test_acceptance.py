"""Acceptance suite: one test per release criterion, each printing a
PASS line with its measured runtime. Tolerances are pinned here, not
configurable."""

import time

import numpy as np
import pytest

from conftest import brute_force_distance, naive_reduction, random_diagram_points
from tempograph.analysis import DiagramDistanceConfig, classical_mds, kmeans_lloyd
from tempograph.cli import main
from tempograph.distances import bottleneck, wasserstein
from tempograph.experiments import (
    edge_importance_sweep,
    node_awareness_sweep,
    stability_study,
    table1_deltas,
    weight_awareness,
    focus_awareness,
)
from tempograph.graphs import exemplar, generate_gnm, is_connected
from tempograph.metrics import (
    DistanceMatrix,
    commute_time_matrix,
    effective_resistance_oracle,
    shortest_path_matrix,
)
from tempograph.persistence import compute_persistence, pd0_single_linkage, rips_filtration

from test_cli import FIXTURE

TABLE1_EXPECTED = [
    (("C5", "e1C5", "K5", "e1K5"), (0.0, 0.25, 0.0, 0.5)),
    (("P5", "e1P5", "C5", "e1C5"), (0.25, -0.25, 0.5, -0.5)),
    (("C9", "e1C9", "K9", "e1K9"), (0.0, 1.0, 0.0, 1.0)),
    (("P9", "e1P9", "C9", "e1C9"), (0.25, -1.0, 0.5, -1.0)),
]

PROPERTY_SEED = 6
STABILITY_SEED = 5


def report(name, t0):
    print(f"\nACCEPTANCE {name}: PASS ({time.time() - t0:.1f}s)")


def test_table1_reproduction_exact():
    t0 = time.time()
    rows = table1_deltas()
    assert len(rows) == 4
    for row, (graphs, expected) in zip(rows, TABLE1_EXPECTED):
        assert row.graphs == graphs
        got = (row.w2_0, row.w2_1, row.winf_0, row.winf_1)
        for g, e in zip(got, expected):
            assert abs(g - e) <= 1e-12, f"{graphs}: {got} != {expected}"
    elapsed = time.time() - t0
    assert elapsed < 5.0, f"Table 1 took {elapsed:.1f}s (budget 5s)"
    report("Table 1 reproduction (tol 1e-12)", t0)


def test_oracle_equivalences_within_budget():
    t0 = time.time()

    # (a) reduction-based PD_0 equals union-find single linkage, exact
    for seed in range(200):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 21))
        a = rng.uniform(0.5, 2.0, size=(n, n))
        a = np.triu(a, k=1)
        d = DistanceMatrix(a + a.T)
        pd0, _ = compute_persistence(rips_filtration(d))
        assert pd0 == pd0_single_linkage(d), f"PD0 oracle mismatch at seed {seed}"

    # (b) full-spectrum commute time equals pseudoinverse effective resistance
    for seed in range(100):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 31))
        max_m = n * (n - 1) // 2
        m = int(rng.integers(0, max_m + 1))
        g = generate_gnm(n, m, seed=seed)
        ct = commute_time_matrix(g, k_eig="all").values
        er = effective_resistance_oracle(g).values
        assert np.array_equal(np.isfinite(ct), np.isfinite(er))
        finite = np.isfinite(ct)
        if finite.any():
            assert np.abs(ct[finite] - er[finite]).max() < 1e-8

    # (c) bottleneck and Wasserstein equal brute-force matching enumeration
    rng = np.random.default_rng(99)
    for trial in range(1000):
        zero = trial % 4 == 0
        x = random_diagram_points(rng, 5, zero_births=zero)
        y = random_diagram_points(rng, 5, zero_births=zero)
        assert abs(bottleneck(x, y) - brute_force_distance(x, y)) <= 1e-9
        assert abs(wasserstein(x, y, 2.0, True) - brute_force_distance(x, y, 2.0)) <= 1e-9

    elapsed = time.time() - t0
    assert elapsed < 60.0, f"oracle equivalences took {elapsed:.1f}s (budget 60s)"
    report("oracle equivalences (PD0 exact, commute 1e-8, distances 1e-9)", t0)


def test_derived_homology_facts():
    t0 = time.time()
    for name, expected in (("C4", (1.0, 2.0)), ("C9", (1.0, 3.0))):
        d = shortest_path_matrix(exemplar(name))
        _, pd1 = compute_persistence(rips_filtration(d))
        assert pd1.finite == (expected,), f"PD1({name}) = {pd1.finite}"
        assert pd1.essential == ()
        finite, essential = naive_reduction(d.values)
        assert finite[1] == [expected]
        assert essential[1] == []
    report("derived homology facts PD1(C4)={(1,2)}, PD1(C9)={(1,3)}", t0)


def test_property_suite_at_fixed_seed():
    t0 = time.time()
    cfg = DiagramDistanceConfig(metric="ct")

    wa = weight_awareness(cfg, seed=PROPERTY_SEED, dims=(0,))
    for r in wa:
        assert r.satisfied_fraction(0) == 1.0, f"P2 G_{{{r.n},{r.m}}} not fully satisfied"

    fa = focus_awareness(cfg, seed=PROPERTY_SEED, dims=(0,))
    for r in fa:
        for k, delta in r.curves[0]:
            assert delta >= 0.0, f"P4 G_{{{r.n},{r.m}}} negative at {k}%: {delta}"

    for sweep in (edge_importance_sweep(cfg, dims=(0,)), node_awareness_sweep(cfg, dims=(0,))):
        row = sweep.base_row(0, "wasserstein")
        assert all(a < b for a, b in zip(row, row[1:])), f"{sweep.base} row not increasing: {row}"

    report("5-property suite (P2 100%, P4 nonnegative, P1/P5 strictly increasing)", t0)


@pytest.mark.slow
def test_stability_study_at_fixed_seed():
    t0 = time.time()
    g0 = generate_gnm(554, 2276, seed=STABILITY_SEED)
    assert is_connected(g0)
    cfg = DiagramDistanceConfig(metric="sp", dim=0)
    study = stability_study(
        g0, cfg, steps=tuple(range(1, 21)), reps=20, seed=STABILITY_SEED
    )
    assert len(study.records) == 400

    w2 = study.per_step("w_2")
    medians = [float(np.median(w2[s])) for s in study.steps]
    assert all(a <= b for a, b in zip(medians, medians[1:])), f"medians not monotone: {medians}"

    def iqr(vals):
        return float(np.percentile(vals, 75) - np.percentile(vals, 25))

    w2n = study.per_step("w_2", normalized=True)
    winfn = study.per_step("w_inf", normalized=True)
    wins = sum(1 for s in study.steps if iqr(w2n[s]) < iqr(winfn[s]))
    assert wins >= 15, f"normalized IQR(W2) < IQR(Winf) on only {wins}/20 steps"

    # matrix norms must be flagged undefined exactly when a rep disconnects
    disconnected = 0
    for r in study.records:
        assert (r.max_norm is None) == (r.frobenius_norm is None)
        if r.max_norm is None:
            disconnected += 1
    assert disconnected > 0, "expected some disconnecting repetitions at 554 vertices"

    elapsed = time.time() - t0
    assert elapsed < 900.0, f"stability study took {elapsed:.0f}s (budget 15 min)"
    report(f"stability study (monotone medians, IQR wins {wins}/20, "
           f"{disconnected} undefined reps)", t0)


def test_mds_and_kmeans_properties():
    t0 = time.time()
    rng = np.random.default_rng(5)
    for _ in range(20):
        pts = rng.normal(size=(int(rng.integers(3, 15)), int(rng.integers(1, 4))))
        diff = pts[:, None, :] - pts[None, :, :]
        d = np.sqrt((diff**2).sum(axis=2))
        coords = classical_mds(d, pts.shape[1])
        rdiff = coords[:, None, :] - coords[None, :, :]
        rec = np.sqrt((rdiff**2).sum(axis=2))
        assert np.abs(rec - d).max() < 1e-8

    for seed in range(10):
        feats = rng.normal(size=(12, 5)).tolist()
        res = kmeans_lloyd(feats, k=3, seed=seed)
        hist = res.inertia_history
        assert all(a >= b - 1e-12 for a, b in zip(hist, hist[1:]))

    feats = rng.normal(size=(6, 4)).tolist()
    res = kmeans_lloyd(feats, k=6, seed=0)
    assert res.inertia == 0.0

    report("MDS reconstruction 1e-8, k-means inertia monotone, k=n inertia 0", t0)


def test_pipeline_determinism_across_threads(tmp_path):
    t0 = time.time()
    outputs = []
    for run, threads in (("a", "1"), ("b", "4"), ("c", "1")):
        out = tmp_path / f"bundle_{run}.json"
        code = main(
            ["pipeline", FIXTURE, "--out", str(out), "--threads", threads, "--seed", "7"]
        )
        assert code == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
    report("pipeline determinism (byte-identical bundle across thread counts)", t0)
