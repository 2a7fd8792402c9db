"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the package's optimized code paths:
diagram distances by exhaustive enumeration over all partial matchings, and
persistence by a naive dense boundary-matrix reduction.
"""

import numpy as np
import pytest

from tempograph.metrics import DistanceMatrix


def linf(a, b):
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def brute_force_distance(x, y, q=None):
    """Exhaustive diagram distance: every point matches another point or the
    diagonal. q=None gives the bottleneck value, otherwise the rooted
    q-Wasserstein value."""
    x = [(b, d) for b, d in x if d != b]
    y = [(b, d) for b, d in y if d != b]
    best = [float("inf")]

    def finish(costs, used):
        for j, (b, d) in enumerate(y):
            if j not in used:
                costs = costs + [(d - b) / 2.0]
        if q is None:
            val = max(costs) if costs else 0.0
        else:
            val = sum(c**q for c in costs)
        if val < best[0]:
            best[0] = val

    def rec(i, used, costs):
        if q is None:
            partial = max(costs) if costs else 0.0
        else:
            partial = sum(c**q for c in costs)
        if partial >= best[0]:
            return
        if i == len(x):
            finish(costs, used)
            return
        rec(i + 1, used, costs + [(x[i][1] - x[i][0]) / 2.0])
        for j in range(len(y)):
            if j not in used:
                rec(i + 1, used | {j}, costs + [linf(x[i], y[j])])

    rec(0, frozenset(), [])
    return best[0] if q is None else best[0] ** (1.0 / q)


def naive_reduction(dist_values, r_max=None):
    """Plain dense boundary-matrix reduction over Z/2, no pivot cache.

    Returns ({dim: finite points}, {dim: essential births}) for dims 0, 1.
    """
    m = np.asarray(dist_values, dtype=float)
    n = m.shape[0]
    finite_vals = m[np.isfinite(m)]
    cap = float(finite_vals.max()) if finite_vals.size else 0.0
    if r_max is not None:
        cap = float(r_max)

    simplices = [((i,), 0.0) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if m[i, j] <= cap:
                simplices.append(((i, j), float(m[i, j])))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                v = max(m[i, j], m[i, k], m[j, k])
                if v <= cap:
                    simplices.append(((i, j, k), float(v)))
    simplices.sort(key=lambda s: (s[1], len(s[0]), s[0]))
    index = {verts: pos for pos, (verts, _) in enumerate(simplices)}

    total = len(simplices)
    B = np.zeros((total, total), dtype=np.int8)
    for pos, (verts, _) in enumerate(simplices):
        if len(verts) > 1:
            for drop in range(len(verts)):
                face = verts[:drop] + verts[drop + 1 :]
                B[index[face], pos] = 1

    def low(col):
        rows = np.flatnonzero(B[:, col])
        return int(rows[-1]) if rows.size else -1

    for j in range(total):
        lj = low(j)
        while lj >= 0:
            pivot = -1
            for k in range(j):
                if low(k) == lj:
                    pivot = k
                    break
            if pivot < 0:
                break
            B[:, j] = (B[:, j] + B[:, pivot]) % 2
            lj = low(j)

    lows = [low(j) for j in range(total)]
    paired = {lj for lj in lows if lj >= 0}
    finite = {0: [], 1: []}
    essential = {0: [], 1: []}
    for j in range(total):
        if lows[j] >= 0:
            i = lows[j]
            bverts, bval = simplices[i]
            dval = simplices[j][1]
            dim = len(bverts) - 1
            if dval > bval and dim in finite:
                finite[dim].append((bval, dval))
        elif j not in paired:
            verts, val = simplices[j]
            dim = len(verts) - 1
            if dim in essential:
                essential[dim].append(val)
    return (
        {d: sorted(finite[d]) for d in finite},
        {d: sorted(essential[d]) for d in essential},
    )


def random_distance_matrix(rng, n, lo=0.5, hi=2.0):
    """Symmetric positive off-diagonal values (no triangle inequality)."""
    a = rng.uniform(lo, hi, size=(n, n))
    a = np.triu(a, k=1)
    a = a + a.T
    return DistanceMatrix(a)


def random_diagram_points(rng, max_points=5, zero_births=False):
    k = int(rng.integers(0, max_points + 1))
    pts = []
    for _ in range(k):
        b = 0.0 if zero_births else float(np.round(rng.uniform(0.0, 2.0), 3))
        d = b + float(np.round(rng.uniform(0.001, 2.0), 3))
        pts.append((b, d))
    return pts


@pytest.fixture
def rng():
    return np.random.default_rng(20240105)
