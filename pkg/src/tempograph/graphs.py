"""Time-varying graph containers, windowed ingestion, generators, perturbations.

Vertex ids are opaque strings. Canonical order is used for every
tie-break: vertices sort lexicographically, edges sort by (min-id, max-id).
"""

from __future__ import annotations

import bisect
import logging
import math
from dataclasses import dataclass, field

import numpy as np

log = logging.getLogger(__name__)

Edge = tuple[str, str]


def canonical_edge(u: str, v: str) -> Edge:
    """Unordered pair as a sorted tuple."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class TemporalEdgeEvent:
    """One timestamped interaction between two vertices."""

    time: float
    u: str
    v: str
    weight: float = 1.0


@dataclass(frozen=True)
class GraphInstance:
    """A single weighted undirected graph of the sequence.

    `edges` maps canonical pairs to strictly positive weights. Instances are
    immutable by convention; perturbation ops return fresh copies.
    """

    id: int
    window: tuple[float, float]
    vertices: tuple[str, ...]
    edges: dict[Edge, float]
    categories: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        vset = set(self.vertices)
        for (u, v), w in self.edges.items():
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u},{v}) references unknown vertex")
            if u >= v:
                raise ValueError(f"edge ({u},{v}) is not in canonical order")
            if not w > 0:
                raise ValueError(f"edge ({u},{v}) has non-positive weight {w}")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertex_index(self) -> dict[str, int]:
        """Vertex id -> row index, in canonical (sorted) order."""
        return {v: i for i, v in enumerate(self.vertices)}

    def sorted_edges(self) -> list[tuple[Edge, float]]:
        return sorted(self.edges.items())

    def total_weight(self) -> float:
        return sum(self.edges.values())

    def midpoint(self) -> float:
        return 0.5 * (self.window[0] + self.window[1])


@dataclass(frozen=True)
class TimeVaryingGraph:
    """Ordered sequence of graph instances plus windowing metadata."""

    instances: tuple[GraphInstance, ...]
    vertex_universe: tuple[str, ...]
    window_length: float
    overlap_fraction: float
    stride: float
    dropped_events: int = 0

    def __post_init__(self):
        starts = [g.window[0] for g in self.instances]
        if any(b < a for a, b in zip(starts, starts[1:])):
            raise ValueError("instance windows are not ordered by start time")

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)


@dataclass(frozen=True)
class PerturbationSpec:
    """Edge-deletion model: delete `fraction` percent of edges, `repetitions`
    independent draws, either uniformly at random or targeting the heaviest
    edges."""

    mode: str = "random"  # random | targeted
    fraction: float = 10.0  # percent of edges, in [0, 100]
    repetitions: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("random", "targeted"):
            raise ValueError(f"unknown perturbation mode {self.mode!r}")
        if not 0.0 <= self.fraction <= 100.0:
            raise ValueError("fraction must be in [0, 100]")
        if self.repetitions < 1:
            raise ValueError("repetitions must be positive")


def _make_instance(idx, window, vertices, edges, categories=None):
    cats = {}
    if categories:
        cats = {v: categories[v] for v in vertices if v in categories}
    return GraphInstance(
        id=idx,
        window=window,
        vertices=tuple(sorted(vertices)),
        edges=dict(sorted(edges.items())),
        categories=cats,
    )


def ingest_temporal_edges(
    stream,
    window_length: float,
    overlap_fraction: float = 0.0,
    categories: dict[str, str] | None = None,
    per_window_vertices: bool = False,
) -> TimeVaryingGraph:
    """Slice a temporal edge stream into overlapping windowed instances.

    Window k covers [t0 + k*stride, t0 + k*stride + window_length) with
    stride = round((1 - overlap_fraction) * window_length) and t0 the first
    event time. Repeated events on a pair aggregate by summing their weights
    (count semantics when all weights are 1). Self-loops and events with
    non-positive weight are dropped with a counted warning.

    By default every instance carries the full event-touched vertex universe,
    so quiet windows appear as edgeless graphs; set `per_window_vertices` to
    restrict each instance to the vertices active in its own window.
    """
    events = sorted(stream, key=lambda e: e.time)
    if not events:
        raise ValueError("no events")
    if window_length <= 0:
        raise ValueError("window_length must be positive")
    if not 0.0 <= overlap_fraction < 1.0:
        raise ValueError("overlap_fraction must be in [0, 1)")

    dropped = 0
    clean: list[TemporalEdgeEvent] = []
    for ev in events:
        if ev.u == ev.v or ev.weight <= 0:
            dropped += 1
            continue
        clean.append(ev)
    if dropped:
        log.warning("dropped %d events (self-loops or non-positive weights)", dropped)
    if not clean:
        raise ValueError("no events")

    stride = round((1.0 - overlap_fraction) * window_length)
    if stride <= 0:
        # sub-unit windows round to a zero stride; fall back to the raw value
        stride = (1.0 - overlap_fraction) * window_length

    t0 = clean[0].time
    t_last = clean[-1].time
    n_windows = int(math.floor((t_last - t0) / stride)) + 1

    universe = sorted({v for ev in clean for v in (ev.u, ev.v)})
    times = [ev.time for ev in clean]

    instances = []
    for k in range(n_windows):
        lo = t0 + k * stride
        hi = lo + window_length
        a = bisect.bisect_left(times, lo)
        b = bisect.bisect_left(times, hi)
        edges: dict[Edge, float] = {}
        touched: set[str] = set()
        for ev in clean[a:b]:
            e = canonical_edge(ev.u, ev.v)
            edges[e] = edges.get(e, 0.0) + ev.weight
            touched.update(e)
        verts = touched if per_window_vertices else universe
        instances.append(_make_instance(k, (lo, hi), verts, edges, categories))

    return TimeVaryingGraph(
        instances=tuple(instances),
        vertex_universe=tuple(universe),
        window_length=float(window_length),
        overlap_fraction=float(overlap_fraction),
        stride=float(stride),
        dropped_events=dropped,
    )


def _pair_from_rank(rank: int, n: int) -> tuple[int, int]:
    # rank in the row-major upper triangle of an n x n matrix
    i = 0
    row = n - 1
    while rank >= row:
        rank -= row
        i += 1
        row -= 1
    return i, i + 1 + rank


def generate_gnm(
    n: int,
    m: int,
    weight_range: tuple[float, float] = (0.1, 1.0),
    seed: int = 0,
) -> GraphInstance:
    """Uniform random graph over all graphs with n vertices and m edges,
    weights i.i.d. uniform in `weight_range`. Deterministic given seed."""
    if n < 1:
        raise ValueError("n must be positive")
    max_m = n * (n - 1) // 2
    if not 0 <= m <= max_m:
        raise ValueError(f"m must be in [0, {max_m}] for n={n}")
    rng = np.random.default_rng(seed)
    ranks = rng.choice(max_m, size=m, replace=False) if m else np.empty(0, int)
    weights = rng.uniform(weight_range[0], weight_range[1], size=m)
    edges = {}
    for rank, w in zip(sorted(int(r) for r in ranks), weights):
        i, j = _pair_from_rank(rank, n)
        edges[canonical_edge(str(i), str(j))] = float(w)
    vertices = [str(i) for i in range(n)]
    return _make_instance(0, (0.0, 1.0), vertices, edges)


def exemplar(name: str, **params) -> GraphInstance:
    """Small named test graphs with unit weights: Cn (cycle), Kn (complete),
    Pn (path), or "custom" with explicit vertices/edges params."""
    if name == "custom":
        vertices = params["vertices"]
        edges = {canonical_edge(u, v): float(w) for (u, v), w in params["edges"].items()}
        return _make_instance(0, (0.0, 1.0), vertices, edges)
    kind, num = name[0], name[1:]
    if kind not in ("C", "K", "P") or not num.isdigit():
        raise ValueError(f"unknown exemplar {name!r}")
    n = int(num)
    if n < 1:
        raise ValueError("exemplar size must be >= 1")
    vertices = [str(i) for i in range(n)]
    edges: dict[Edge, float] = {}
    if kind == "C" and n >= 3:
        pairs = [(i, (i + 1) % n) for i in range(n)]
    elif kind == "K":
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif kind == "P":
        pairs = [(i, i + 1) for i in range(n - 1)]
    else:
        raise ValueError(f"cycle exemplar needs n >= 3, got {n}")
    for i, j in pairs:
        edges[canonical_edge(str(i), str(j))] = 1.0
    return _make_instance(0, (0.0, 1.0), vertices, edges)


def perturb_delete_edges(g: GraphInstance, spec: PerturbationSpec, rep: int = 0) -> GraphInstance:
    """Delete round(fraction/100 * |E|) edges; vertices are untouched.

    Random mode draws uniformly without replacement from the canonical edge
    list. Targeted mode removes the heaviest edges, ties broken by canonical
    edge order. `rep` selects one of the independent repetitions.
    """
    n_remove = round(spec.fraction / 100.0 * g.n_edges)
    if spec.fraction > 0 and g.n_edges == 0:
        raise ValueError("graph has no edges to delete")
    if n_remove == 0:
        return _make_instance(g.id, g.window, g.vertices, dict(g.edges), g.categories)

    ordered = g.sorted_edges()
    if spec.mode == "targeted":
        by_weight = sorted(ordered, key=lambda item: (-item[1], item[0]))
        removed = {e for e, _ in by_weight[:n_remove]}
    else:
        rng = np.random.default_rng([spec.seed, rep])
        idx = rng.choice(len(ordered), size=n_remove, replace=False)
        removed = {ordered[int(i)][0] for i in idx}

    kept = {e: w for e, w in ordered if e not in removed}
    return _make_instance(g.id, g.window, g.vertices, kept, g.categories)


def delete_nodes(g: GraphInstance, nodes) -> GraphInstance:
    """Remove the listed vertices and all incident edges."""
    nodes = set(nodes)
    unknown = nodes - set(g.vertices)
    if unknown:
        raise ValueError(f"unknown vertex ids: {sorted(unknown)}")
    verts = [v for v in g.vertices if v not in nodes]
    edges = {(u, v): w for (u, v), w in g.edges.items() if u not in nodes and v not in nodes}
    return _make_instance(g.id, g.window, verts, edges, g.categories)


def modify_edge_weight(g: GraphInstance, e: Edge, delta: float) -> GraphInstance:
    """Return a copy with w(e) changed to w(e) + delta."""
    e = canonical_edge(*e)
    if e not in g.edges:
        raise ValueError(f"edge {e} not in graph")
    w = g.edges[e] + delta
    if not w > 0:
        raise ValueError(f"modified weight must stay positive, got {w}")
    edges = dict(g.edges)
    edges[e] = w
    return _make_instance(g.id, g.window, g.vertices, edges, g.categories)


def connected_components(g: GraphInstance) -> list[set[str]]:
    """Connected components as sets of vertex ids, in canonical order."""
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru
    groups: dict[str, set[str]] = {}
    for v in g.vertices:
        groups.setdefault(find(v), set()).add(v)
    return [groups[r] for r in sorted(groups)]


def is_connected(g: GraphInstance) -> bool:
    return g.n_vertices <= 1 or len(connected_components(g)) == 1
