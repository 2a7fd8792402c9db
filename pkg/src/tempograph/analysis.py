"""Timeline analyses over diagram sequences: pairwise diagram distances,
classical MDS projection, period splitting and k-means clustering of periods,
and matrix-norm baselines for distance matrices.

The k-means here runs on a small portable RNG (splitmix64) instead of numpy
so that a browser-side reimplementation can reproduce cluster assignments
bit for bit.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .distances import DROP_ESSENTIALS, EssentialPolicy, bottleneck, preprocess, wasserstein
from .graphs import GraphInstance, TimeVaryingGraph
from .metrics import DistanceMatrix, commute_time_matrix, shortest_path_matrix
from .persistence import (
    PersistenceDiagram,
    compute_persistence,
    pd0_single_linkage,
    rips_filtration,
)

DISCONNECTED = "undefined (disconnected)"

SECONDS_PER_DAY = 86400.0


@dataclass(frozen=True)
class DiagramDistanceConfig:
    """Every knob of the instance-comparison pipeline."""

    metric: str = "sp"  # sp | ct
    dim: int = 0  # homology dimension compared on the timeline
    distance: str = "wasserstein"  # bottleneck | wasserstein
    q: float = 2.0
    apply_root: bool = True
    essential: EssentialPolicy = DROP_ESSENTIALS
    weight_scheme: str = "length"  # sp only; ct uses raw weights
    k_eig: int | str = "auto"  # auto: full spectrum up to 500 vertices, else 30

    def __post_init__(self):
        if self.metric not in ("sp", "ct"):
            raise ValueError(f"unknown metric {self.metric!r}")
        if self.dim not in (0, 1):
            raise ValueError("dim must be 0 or 1")
        if self.distance not in ("bottleneck", "wasserstein"):
            raise ValueError(f"unknown distance {self.distance!r}")
        if self.q <= 0:
            raise ValueError("q must be positive")


@dataclass(frozen=True)
class TimelineRecord:
    """Per-instance analysis output feeding export and the viewer."""

    instance_id: int
    time: float  # window midpoint
    mds: tuple[float, ...]
    period: int
    cluster: int | None = None
    hour_of_day: float = 0.0
    day_of_week: int = 0


@dataclass(frozen=True)
class PeriodSegment:
    index: int
    records: tuple[TimelineRecord, ...]
    full: bool


def embed(g: GraphInstance, cfg: DiagramDistanceConfig) -> DistanceMatrix:
    """Metric-space embedding of an instance per the config."""
    if cfg.metric == "sp":
        return shortest_path_matrix(g, cfg.weight_scheme)
    k_eig = cfg.k_eig
    if k_eig == "auto":
        k_eig = "all" if g.n_vertices <= 500 else 30
    return commute_time_matrix(g, k_eig)


def diagram(g: GraphInstance, cfg: DiagramDistanceConfig) -> PersistenceDiagram:
    """Persistence diagram of an instance in the configured dimension.

    Dimension 0 takes the union-find fast path; dimension 1 goes through the
    full Rips filtration and boundary reduction.
    """
    d = embed(g, cfg)
    if cfg.dim == 0:
        return pd0_single_linkage(d)
    return compute_persistence(rips_filtration(d))[1]


def diagram_pair(g: GraphInstance, cfg: DiagramDistanceConfig):
    """Both diagrams (dim 0 and 1) via the reduction, for export."""
    d = embed(g, cfg)
    return compute_persistence(rips_filtration(d))


def diagram_distance(x: PersistenceDiagram, y: PersistenceDiagram, cfg: DiagramDistanceConfig) -> float:
    px = preprocess(x, cfg.essential)
    py = preprocess(y, cfg.essential)
    if cfg.distance == "bottleneck":
        return bottleneck(px, py)
    return wasserstein(px, py, cfg.q, cfg.apply_root)


def pairwise_diagram_distances(diagrams, cfg: DiagramDistanceConfig, threads: int = 1) -> np.ndarray:
    """Symmetric matrix of configured distances between the given diagrams.

    Work items are independent (i, j) pairs; results merge by index, so the
    output does not depend on the thread count.
    """
    n = len(diagrams)
    if n < 2:
        raise ValueError("need at least 2 diagrams")
    pts = [preprocess(pd, cfg.essential) for pd in diagrams]

    def one(pair):
        i, j = pair
        if cfg.distance == "bottleneck":
            return bottleneck(pts[i], pts[j])
        return wasserstein(pts[i], pts[j], cfg.q, cfg.apply_root)

    jobs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(one, jobs))
    else:
        values = [one(p) for p in jobs]

    out = np.zeros((n, n))
    for (i, j), v in zip(jobs, values):
        out[i, j] = out[j, i] = v
    return out


def classical_mds(dist: np.ndarray, dims: int) -> np.ndarray:
    """Classical MDS: eigendecomposition of the double-centered squared
    distances, coordinates from the top nonnegative eigenvalues.

    Columns are ordered by descending eigenvalue and sign-fixed so the
    largest-magnitude entry of each column is positive. Requested dimensions
    beyond the available eigenvalues come back as zero columns.
    """
    dist = np.asarray(dist, dtype=float)
    if dims < 1:
        raise ValueError("dims must be positive")
    if not np.isfinite(dist).all():
        raise ValueError("distance matrix must be finite")
    n = dist.shape[0]
    j = np.eye(n) - np.ones((n, n)) / n
    b = -0.5 * j @ (dist**2) @ j
    vals, vecs = np.linalg.eigh(b)
    order = np.argsort(vals)[::-1]
    vals, vecs = vals[order], vecs[:, order]
    take = min(dims, n)
    coords = vecs[:, :take] * np.sqrt(np.clip(vals[:take], 0.0, None))
    for c in range(coords.shape[1]):
        col = coords[:, c]
        lead = int(np.argmax(np.abs(col)))
        if col[lead] < 0:
            coords[:, c] = -col
    if take < dims:
        coords = np.hstack([coords, np.zeros((n, dims - take))])
    return coords


def make_timeline(
    tvg: TimeVaryingGraph,
    mds_coords: np.ndarray,
    period_length: int,
) -> list[TimelineRecord]:
    """One record per instance: midpoint time, MDS coordinates, period index,
    and cyclic colormap keys (hour of day / day of week, UTC-based when
    timestamps are unix seconds)."""
    if period_length < 1:
        raise ValueError("period_length must be >= 1")
    records = []
    for g, row in zip(tvg.instances, mds_coords):
        mid = g.midpoint()
        hod = (mid % SECONDS_PER_DAY) / 3600.0
        dow = int((mid // SECONDS_PER_DAY) + 3) % 7  # epoch day 0 is a Thursday
        records.append(
            TimelineRecord(
                instance_id=g.id,
                time=mid,
                mds=tuple(float(v) for v in row),
                period=g.id // period_length,
                hour_of_day=hod,
                day_of_week=dow,
            )
        )
    return records


def split_periods(records, period_length: int) -> list[PeriodSegment]:
    """Consecutive chunks of `period_length` records; a trailing partial
    chunk is kept and flagged."""
    if period_length < 1:
        raise ValueError("period_length must be >= 1")
    segments = []
    for idx in range(0, len(records), period_length):
        chunk = tuple(records[idx : idx + period_length])
        segments.append(
            PeriodSegment(
                index=idx // period_length,
                records=chunk,
                full=len(chunk) == period_length,
            )
        )
    return segments


# -- portable k-means ------------------------------------------------------

_M64 = (1 << 64) - 1


class SplitMix64:
    """Tiny deterministic RNG shared verbatim with the viewer code."""

    def __init__(self, seed: int):
        self.state = seed & _M64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _M64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        return (self.next_u64() >> 11) * (2.0**-53)


def _sqdist(a, b) -> float:
    acc = 0.0
    for x, y in zip(a, b):
        acc += (x - y) * (x - y)
    return acc


@dataclass(frozen=True)
class KMeansResult:
    assignments: tuple[int, ...]
    centroids: tuple[tuple[float, ...], ...]
    inertia: float
    inertia_history: tuple[float, ...]


def kmeans_lloyd(features, k: int, seed: int, max_iter: int = 100) -> KMeansResult:
    """Lloyd iterations with k-means++ seeding over the portable RNG.

    Ties in assignment go to the lowest centroid index; an emptied cluster
    keeps its previous centroid. Converges when assignments stabilize.
    """
    n = len(features)
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}]")
    features = [list(map(float, f)) for f in features]
    rng = SplitMix64(seed)

    first = min(int(rng.next_float() * n), n - 1)
    centroids = [features[first][:]]
    while len(centroids) < k:
        d2 = [min(_sqdist(f, c) for c in centroids) for f in features]
        total = 0.0
        for v in d2:
            total += v
        if total == 0.0:
            idx = (first + len(centroids)) % n
        else:
            r = rng.next_float() * total
            acc = 0.0
            idx = n - 1
            for i, v in enumerate(d2):
                acc += v
                if r < acc:
                    idx = i
                    break
        centroids.append(features[idx][:])

    assignments = [-1] * n
    history = []
    for _ in range(max_iter):
        inertia = 0.0
        new_assign = []
        for f in features:
            best_c, best_d = 0, _sqdist(f, centroids[0])
            for c in range(1, k):
                dd = _sqdist(f, centroids[c])
                if dd < best_d:
                    best_c, best_d = c, dd
            new_assign.append(best_c)
            inertia += best_d
        history.append(inertia)
        if new_assign == assignments:
            break
        assignments = new_assign
        dim = len(features[0])
        for c in range(k):
            members = [f for f, a in zip(features, assignments) if a == c]
            if members:
                centroids[c] = [
                    sum(f[d] for f in members) / len(members) for d in range(dim)
                ]

    return KMeansResult(
        assignments=tuple(assignments),
        centroids=tuple(tuple(c) for c in centroids),
        inertia=history[-1],
        inertia_history=tuple(history),
    )


def kmeans_periods(segments, k: int, seed: int) -> tuple[list[TimelineRecord], KMeansResult]:
    """Cluster full periods on their per-instance first-MDS-coordinate series.

    Partial segments are excluded from clustering and keep cluster None.
    Returns the flattened records with cluster ids filled in, plus the
    k-means result over the full segments.
    """
    full = [s for s in segments if s.full]
    if k > len(full):
        raise ValueError(f"k={k} exceeds the {len(full)} full segments")
    feats = [[rec.mds[0] for rec in s.records] for s in full]
    result = kmeans_lloyd(feats, k, seed)
    cluster_of = {s.index: c for s, c in zip(full, result.assignments)}
    out = []
    for s in segments:
        for rec in s.records:
            out.append(replace(rec, cluster=cluster_of.get(s.index)))
    return out, result


def matrix_norm_delta(d_i: DistanceMatrix, d_0: DistanceMatrix, norm: str = "max") -> float | None:
    """Matrix norm of the entrywise difference d_i - d_0.

    Returns None (the "undefined (disconnected)" sentinel) when either matrix
    carries a +inf entry, i.e. a disconnected instance.
    """
    a, b = d_i.values, d_0.values
    if a.shape != b.shape:
        raise ValueError("distance matrices differ in shape")
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        return None
    diff = a - b
    if norm == "max":
        return float(np.abs(diff).max()) if diff.size else 0.0
    if norm == "frobenius":
        return float(np.sqrt((diff**2).sum()))
    raise ValueError(f"unknown norm {norm!r}")
