"""Exact bottleneck and Wasserstein distances between persistence diagrams.

Points may be matched to each other or to the diagonal (the diagonal carries
infinite multiplicity, so the problem is a square assignment on the two point
sets augmented with their projections). Costs are L-infinity displacements;
matching a point to the diagonal costs half its persistence.

Dimension-0 diagrams have every birth at 0, which collapses the assignment to
a one-dimensional alignment problem solved by an O(n*m) dynamic program; an
optimal matching of sorted death values is non-crossing, so the DP is exact.
General diagrams go through binary search + maximum bipartite matching
(bottleneck) or the Hungarian algorithm on the augmented cost matrix
(Wasserstein).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np
from numba import njit

Point = tuple[float, float]


@dataclass(frozen=True)
class EssentialPolicy:
    """What to do with classes that never die: drop them, or cap their death
    at a fixed value (which must dominate every finite death compared)."""

    mode: str = "drop"  # drop | cap
    value: float | None = None

    def __post_init__(self):
        if self.mode not in ("drop", "cap"):
            raise ValueError(f"unknown essential policy {self.mode!r}")
        if self.mode == "cap" and (self.value is None or not np.isfinite(self.value)):
            raise ValueError("cap policy needs a finite value")


DROP_ESSENTIALS = EssentialPolicy("drop")


def preprocess(pd, policy: EssentialPolicy = DROP_ESSENTIALS) -> list[Point]:
    """Finite point multiset of a diagram under the essential policy."""
    pts = [(float(b), float(d)) for b, d in pd.finite]
    if policy.mode == "cap":
        for b, d in pts:
            if d > policy.value:
                raise ValueError(f"cap {policy.value} is below finite death {d}")
        for b in pd.essential:
            if b > policy.value:
                raise ValueError(f"cap {policy.value} is below essential birth {b}")
        pts += [(float(b), float(policy.value)) for b in pd.essential]
    return sorted(pts)


def _linf(a: Point, b: Point) -> float:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def _diag_cost(p: Point) -> float:
    return (p[1] - p[0]) / 2.0


def _drop_zero_persistence(pts) -> list[Point]:
    return [(b, d) for b, d in pts if d != b]


@njit(cache=True)
def _zero_birth_align(xs, ys, q, use_max):  # pragma: no cover - jit kernel
    """Min-cost monotone alignment of two sorted death sequences.

    Cost of matching x to y is |x-y|**q, of skipping a value v is (v/2)**q;
    costs aggregate by + (use_max False) or max (use_max True).
    """
    nx, ny = xs.shape[0], ys.shape[0]
    prev = np.empty(ny + 1)
    cur = np.empty(ny + 1)
    prev[0] = 0.0
    for j in range(1, ny + 1):
        c = (ys[j - 1] / 2.0) ** q
        prev[j] = max(prev[j - 1], c) if use_max else prev[j - 1] + c
    for i in range(1, nx + 1):
        cx = (xs[i - 1] / 2.0) ** q
        cur[0] = max(prev[0], cx) if use_max else prev[0] + cx
        for j in range(1, ny + 1):
            cm = abs(xs[i - 1] - ys[j - 1]) ** q
            cy = (ys[j - 1] / 2.0) ** q
            if use_max:
                a = max(prev[j - 1], cm)
                b = max(prev[j], cx)
                c = max(cur[j - 1], cy)
            else:
                a = prev[j - 1] + cm
                b = prev[j] + cx
                c = cur[j - 1] + cy
            best = a if a < b else b
            cur[j] = best if best < c else c
        prev, cur = cur, prev
    return prev[ny]


@njit(cache=True)
def _hungarian(cost):  # pragma: no cover - jit kernel
    """Exact minimum-cost square assignment (potentials method, O(n^3))."""
    n = cost.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    match_row = np.zeros(n + 1, dtype=np.int64)  # column -> assigned row
    way = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        match_row[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=np.bool_)
        while True:
            used[j0] = True
            i0 = match_row[j0]
            delta = np.inf
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match_row[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match_row[j0] == 0:
                break
        while j0 != 0:
            j1 = way[j0]
            match_row[j0] = match_row[j1]
            j0 = j1
    total = 0.0
    for j in range(1, n + 1):
        total += cost[match_row[j] - 1, j - 1]
    return total


def _augmented_costs(x: list[Point], y: list[Point], power: float = 1.0) -> np.ndarray:
    nx, ny = len(x), len(y)
    size = nx + ny
    c = np.zeros((size, size))
    for i, p in enumerate(x):
        for j, r in enumerate(y):
            c[i, j] = _linf(p, r)
        c[i, ny:] = _diag_cost(p)
    for j, r in enumerate(y):
        c[nx:, j] = _diag_cost(r)
    if power != 1.0:
        c **= power
    return c


class _HopcroftKarp:
    """Maximum matching on a bipartite graph given as adjacency lists."""

    INF = float("inf")

    def __init__(self, n_left: int, n_right: int, adj: list[list[int]]):
        self.n_left = n_left
        self.n_right = n_right
        self.adj = adj
        self.match_left = [-1] * n_left
        self.match_right = [-1] * n_right

    def _bfs(self) -> bool:
        self.dist = [self.INF] * self.n_left
        queue = deque()
        for ui in range(self.n_left):
            if self.match_left[ui] == -1:
                self.dist[ui] = 0
                queue.append(ui)
        found = False
        while queue:
            ui = queue.popleft()
            for vi in self.adj[ui]:
                wi = self.match_right[vi]
                if wi == -1:
                    found = True
                elif self.dist[wi] == self.INF:
                    self.dist[wi] = self.dist[ui] + 1
                    queue.append(wi)
        return found

    def _dfs(self, ui: int) -> bool:
        for vi in self.adj[ui]:
            wi = self.match_right[vi]
            if wi == -1 or (self.dist[wi] == self.dist[ui] + 1 and self._dfs(wi)):
                self.match_left[ui] = vi
                self.match_right[vi] = ui
                return True
        self.dist[ui] = self.INF
        return False

    def max_matching(self) -> int:
        size = 0
        while self._bfs():
            for ui in range(self.n_left):
                if self.match_left[ui] == -1 and self._dfs(ui):
                    size += 1
        return size


def _feasible(costs: np.ndarray, threshold: float) -> bool:
    """Perfect matching using only augmented-cost edges <= threshold?"""
    size = costs.shape[0]
    adj = [list(np.flatnonzero(costs[i] <= threshold)) for i in range(size)]
    hk = _HopcroftKarp(size, size, adj)
    return hk.max_matching() == size


def bottleneck(x, y) -> float:
    """Exact bottleneck distance between two finite point multisets."""
    x = _drop_zero_persistence(x)
    y = _drop_zero_persistence(y)
    if not x and not y:
        return 0.0
    if all(b == 0 for b, _ in x) and all(b == 0 for b, _ in y):
        xs = np.sort(np.array([d for _, d in x], dtype=float))
        ys = np.sort(np.array([d for _, d in y], dtype=float))
        return float(_zero_birth_align(xs, ys, 1.0, True))

    costs = _augmented_costs(x, y)
    candidates = np.unique(np.concatenate([[0.0], costs.ravel()]))
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(costs, candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])


def wasserstein(x, y, q: float = 2.0, apply_root: bool = True) -> float:
    """Exact q-Wasserstein distance between two finite point multisets.

    Returns the optimal sum of L-infinity displacements raised to q, with the
    outer 1/q root applied unless `apply_root` is false.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    x = _drop_zero_persistence(x)
    y = _drop_zero_persistence(y)
    if not x and not y:
        return 0.0
    # the alignment DP needs convex per-pair costs, hence q >= 1
    if q >= 1.0 and all(b == 0 for b, _ in x) and all(b == 0 for b, _ in y):
        xs = np.sort(np.array([d for _, d in x], dtype=float))
        ys = np.sort(np.array([d for _, d in y], dtype=float))
        total = float(_zero_birth_align(xs, ys, q, False))
    else:
        total = float(_hungarian(_augmented_costs(x, y, power=q)))
    return total ** (1.0 / q) if apply_root else total
