"""Validation experiments for the persistence-based similarity measure.

Five desirable properties of a graph similarity measure are exercised on
synthetic graphs (edge importance, weight awareness, edge-submodularity,
focus awareness, node awareness), plus a stability study that deletes a
growing fraction of edges from a baseline and compares the persistence
distances against matrix-norm baselines.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analysis import DiagramDistanceConfig, diagram, diagram_distance, embed, matrix_norm_delta
from .distances import DROP_ESSENTIALS, bottleneck, preprocess, wasserstein
from .graphs import (
    GraphInstance,
    PerturbationSpec,
    _make_instance,
    delete_nodes,
    exemplar,
    generate_gnm,
    is_connected,
    modify_edge_weight,
    perturb_delete_edges,
)

TABLE1_ROWS = (
    ("C5", "K5"),
    ("P5", "C5"),
    ("C9", "K9"),
    ("P9", "C9"),
)

WEIGHT_AWARENESS_SIZES = ((50, 200), (60, 250), (70, 300))
FOCUS_AWARENESS_SIZES = ((35, 70), (100, 500), (120, 300))
FOCUS_AWARENESS_PERCENTS = tuple(range(10, 80, 10))


def drop_first_edges(g: GraphInstance, count: int) -> GraphInstance:
    """Remove the first `count` edges in canonical order."""
    removed = {e for e, _ in g.sorted_edges()[:count]}
    kept = {e: w for e, w in g.edges.items() if e not in removed}
    return _make_instance(g.id, g.window, g.vertices, kept, g.categories)


def e1(g: GraphInstance) -> GraphInstance:
    """The graph with its canonically first edge deleted."""
    return drop_first_edges(g, 1)


@dataclass(frozen=True)
class Table1Row:
    graphs: tuple[str, str, str, str]
    w2_0: float
    w2_1: float
    winf_0: float
    winf_1: float


def table1_deltas() -> list[Table1Row]:
    """Edge-submodularity deltas Delta(W) = W(A, B) - W(C, D) for the
    cycle/complete/path exemplar rows.

    Pinned configuration: shortest-path metric, unit weights, essentials
    dropped, Wasserstein reported as the raw (un-rooted) optimal sum.
    """
    rows = []
    for a_name, c_name in TABLE1_ROWS:
        a = exemplar(a_name)
        c = exemplar(c_name)
        quads = (a, e1(a), c, e1(c))
        deltas = {}
        for dim in (0, 1):
            cfg = DiagramDistanceConfig(metric="sp", dim=dim)
            pds = [diagram(g, cfg) for g in quads]
            pts = [preprocess(pd, DROP_ESSENTIALS) for pd in pds]
            deltas[("w2", dim)] = wasserstein(pts[0], pts[1], 2.0, False) - wasserstein(
                pts[2], pts[3], 2.0, False
            )
            deltas[("winf", dim)] = bottleneck(pts[0], pts[1]) - bottleneck(pts[2], pts[3])
        rows.append(
            Table1Row(
                graphs=(a_name, f"e1{a_name}", c_name, f"e1{c_name}"),
                w2_0=deltas[("w2", 0)],
                w2_1=deltas[("w2", 1)],
                winf_0=deltas[("winf", 0)],
                winf_1=deltas[("winf", 1)],
            )
        )
    return rows


@dataclass(frozen=True)
class DeletionSweep:
    """Pairwise distance matrices between a base graph and its progressively
    deleted variants (edge deletions for edge importance, node deletions for
    node awareness)."""

    base: str
    labels: tuple[str, ...]
    matrices: dict[tuple[int, str], np.ndarray]  # (dim, distance kind) -> matrix

    def base_row(self, dim: int, kind: str) -> np.ndarray:
        return self.matrices[(dim, kind)][0]


def _sweep(variants, labels, base_name, cfg: DiagramDistanceConfig, dims) -> DeletionSweep:
    matrices = {}
    for dim in dims:
        dcfg = DiagramDistanceConfig(
            metric=cfg.metric,
            dim=dim,
            q=cfg.q,
            apply_root=cfg.apply_root,
            essential=cfg.essential,
            weight_scheme=cfg.weight_scheme,
            k_eig=cfg.k_eig,
        )
        pds = [diagram(g, dcfg) for g in variants]
        pts = [preprocess(pd, dcfg.essential) for pd in pds]
        n = len(variants)
        for kind in ("bottleneck", "wasserstein"):
            m = np.zeros((n, n))
            for i in range(n):
                for j in range(i + 1, n):
                    if kind == "bottleneck":
                        v = bottleneck(pts[i], pts[j])
                    else:
                        v = wasserstein(pts[i], pts[j], dcfg.q, dcfg.apply_root)
                    m[i, j] = m[j, i] = v
            matrices[(dim, kind)] = m
    return DeletionSweep(base=base_name, labels=tuple(labels), matrices=matrices)


def edge_importance_sweep(
    cfg: DiagramDistanceConfig, dims=(0,), base_n: int = 10, steps: int = 4
) -> DeletionSweep:
    """Property 1: delete i path edges (each deletion splits a component)."""
    base = exemplar(f"P{base_n}")
    variants = [drop_first_edges(base, i) for i in range(steps + 1)]
    labels = [f"e{i}P{base_n}" if i else f"P{base_n}" for i in range(steps + 1)]
    return _sweep(variants, labels, f"P{base_n}", cfg, dims)


def node_awareness_sweep(
    cfg: DiagramDistanceConfig, dims=(0,), base_n: int = 10, steps: int = 4
) -> DeletionSweep:
    """Property 5: delete i nodes (and their incident edges) from a path."""
    base = exemplar(f"P{base_n}")
    variants = [delete_nodes(base, [str(j) for j in range(i)]) for i in range(steps + 1)]
    labels = [f"n{i}P{base_n}" if i else f"P{base_n}" for i in range(steps + 1)]
    return _sweep(variants, labels, f"P{base_n}", cfg, dims)


@dataclass(frozen=True)
class WeightAwarenessResult:
    """Per-graph scatter for property 2. Each point is
    (W(eA, C^e), W(eA, B^e)) for one edge e; the property holds for points on
    or above the diagonal."""

    n: int
    m: int
    points: dict[int, tuple[tuple[float, float], ...]]  # dim -> points

    def satisfied_fraction(self, dim: int) -> float:
        pts = self.points[dim]
        if not pts:
            return 1.0
        return sum(1 for x, y in pts if y >= x) / len(pts)


def weight_awareness(
    cfg: DiagramDistanceConfig,
    seed: int,
    dims=(0,),
    sizes=WEIGHT_AWARENESS_SIZES,
    threads: int = 1,
) -> list[WeightAwarenessResult]:
    """Property 2: for every edge e of a random weighted graph A, compare the
    deleted graph eA against A with w(e) raised by ~(4,5) (graph B^e) and by
    ~(2,3) (graph C^e). Deleting a heavier edge should matter more, so
    W(eA, B^e) >= W(eA, C^e) is the pass condition."""
    results = []
    for gi, (n, m) in enumerate(sizes):
        a = generate_gnm(n, m, seed=[seed, gi])
        rng = np.random.default_rng([seed, gi, 1])
        edges = [e for e, _ in a.sorted_edges()]
        deltas = [(rng.uniform(4.0, 5.0), rng.uniform(2.0, 3.0)) for _ in edges]

        def one(item, a=a):
            e, (db, dc) = item
            edges_wo = {k: w for k, w in a.edges.items() if k != e}
            ea = _make_instance(a.id, a.window, a.vertices, edges_wo, a.categories)
            bg = modify_edge_weight(a, e, db)
            cg = modify_edge_weight(a, e, dc)
            out = {}
            for dim in dims:
                dcfg = _with_dim(cfg, dim)
                pd_ea = diagram(ea, dcfg)
                pd_b = diagram(bg, dcfg)
                pd_c = diagram(cg, dcfg)
                out[dim] = (
                    diagram_distance(pd_ea, pd_c, dcfg),
                    diagram_distance(pd_ea, pd_b, dcfg),
                )
            return out

        jobs = list(zip(edges, deltas))
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                rows = list(pool.map(one, jobs))
        else:
            rows = [one(j) for j in jobs]
        points = {dim: tuple(r[dim] for r in rows) for dim in dims}
        results.append(WeightAwarenessResult(n=n, m=m, points=points))
    return results


def _with_dim(cfg: DiagramDistanceConfig, dim: int) -> DiagramDistanceConfig:
    return DiagramDistanceConfig(
        metric=cfg.metric,
        dim=dim,
        distance=cfg.distance,
        q=cfg.q,
        apply_root=cfg.apply_root,
        essential=cfg.essential,
        weight_scheme=cfg.weight_scheme,
        k_eig=cfg.k_eig,
    )


@dataclass(frozen=True)
class FocusAwarenessResult:
    """Per-graph corruption curves for property 4: targeted minus random
    deletion distance at each corruption percentage."""

    n: int
    m: int
    curves: dict[int, tuple[tuple[int, float], ...]]  # dim -> (percent, delta)


def focus_awareness(
    cfg: DiagramDistanceConfig,
    seed: int,
    dims=(0,),
    sizes=FOCUS_AWARENESS_SIZES,
    percents=FOCUS_AWARENESS_PERCENTS,
) -> list[FocusAwarenessResult]:
    """Property 4: deleting the heaviest k% of edges (targeted) should move
    the diagram at least as far as deleting a random k%."""
    results = []
    for gi, (n, m) in enumerate(sizes):
        a = generate_gnm(n, m, seed=[seed, gi])
        base_pd = {dim: diagram(a, _with_dim(cfg, dim)) for dim in dims}
        curves: dict[int, list[tuple[int, float]]] = {dim: [] for dim in dims}
        for k in percents:
            targeted = perturb_delete_edges(a, PerturbationSpec("targeted", fraction=k))
            random = perturb_delete_edges(
                a, PerturbationSpec("random", fraction=k, seed=seed), rep=gi * 1000 + k
            )
            for dim in dims:
                dcfg = _with_dim(cfg, dim)
                wt = diagram_distance(base_pd[dim], diagram(targeted, dcfg), dcfg)
                wr = diagram_distance(base_pd[dim], diagram(random, dcfg), dcfg)
                curves[dim].append((k, wt - wr))
        results.append(
            FocusAwarenessResult(n=n, m=m, curves={d: tuple(c) for d, c in curves.items()})
        )
    return results


@dataclass(frozen=True)
class StabilityRecord:
    """One perturbed run: deletion step (percent), repetition index, and the
    four similarity measures against the baseline. Matrix norms are None when
    the perturbed graph is disconnected."""

    step: int
    rep: int
    w_inf: float
    w_2: float
    max_norm: float | None
    frobenius_norm: float | None


@dataclass(frozen=True)
class StabilityStudy:
    records: tuple[StabilityRecord, ...]
    steps: tuple[int, ...]
    reps: int

    def measure(self, name: str) -> list[float | None]:
        return [getattr(r, name) for r in self.records]

    def normalized(self, name: str) -> list[float | None]:
        """Measure scaled to [0, 1] by the maximum observed value."""
        raw = self.measure(name)
        finite = [v for v in raw if v is not None]
        top = max(finite) if finite else 0.0
        if top == 0.0:
            return [0.0 if v is not None else None for v in raw]
        return [v / top if v is not None else None for v in raw]

    def per_step(self, name: str, normalized: bool = False) -> dict[int, list[float | None]]:
        vals = self.normalized(name) if normalized else self.measure(name)
        out: dict[int, list[float | None]] = {s: [] for s in self.steps}
        for rec, v in zip(self.records, vals):
            out[rec.step].append(v)
        return out


def stability_study(
    g0: GraphInstance,
    cfg: DiagramDistanceConfig,
    steps=tuple(range(1, 21)),
    reps: int = 20,
    seed: int = 0,
    threads: int = 1,
) -> StabilityStudy:
    """Delete step% of edges uniformly at random (reps independent draws per
    step), re-embed, and record bottleneck / Wasserstein distances of the
    configured diagrams plus max- and Frobenius-norm deltas of the distance
    matrices, all against the unperturbed baseline."""
    if not is_connected(g0):
        raise ValueError("baseline graph must be connected")
    d0 = embed(g0, cfg)
    base_pd = diagram(g0, cfg)
    base_pts = preprocess(base_pd, cfg.essential)

    def one(job):
        step, rep = job
        spec = PerturbationSpec("random", fraction=step, repetitions=reps, seed=seed)
        g = perturb_delete_edges(g0, spec, rep=step * reps + rep)
        d = embed(g, cfg)
        pd = diagram(g, cfg)
        pts = preprocess(pd, cfg.essential)
        return StabilityRecord(
            step=step,
            rep=rep,
            w_inf=bottleneck(base_pts, pts),
            w_2=wasserstein(base_pts, pts, cfg.q, cfg.apply_root),
            max_norm=matrix_norm_delta(d, d0, "max"),
            frobenius_norm=matrix_norm_delta(d, d0, "frobenius"),
        )

    jobs = [(step, rep) for step in steps for rep in range(1, reps + 1)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(one, jobs))
    else:
        records = [one(j) for j in jobs]
    return StabilityStudy(records=tuple(records), steps=tuple(steps), reps=reps)


@dataclass(frozen=True)
class PropertySuiteReport:
    edge_importance: DeletionSweep
    weight_awareness: list[WeightAwarenessResult]
    table1: list[Table1Row]
    focus_awareness: list[FocusAwarenessResult]
    node_awareness: DeletionSweep


def property_suite(
    cfg: DiagramDistanceConfig, seed: int = 7, dims=(0,), threads: int = 1
) -> PropertySuiteReport:
    """Run all five property experiments and collect their reports."""
    return PropertySuiteReport(
        edge_importance=edge_importance_sweep(cfg, dims),
        weight_awareness=weight_awareness(cfg, seed, dims, threads=threads),
        table1=table1_deltas(),
        focus_awareness=focus_awareness(cfg, seed, dims),
        node_awareness=node_awareness_sweep(cfg, dims),
    )
