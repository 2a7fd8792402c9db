"""Rips filtrations and 0-/1-dimensional persistence diagrams.

The filtration truncates at r_max (default: the largest finite distance, at
which every component becomes a complete 2-skeleton, so all 1-cycles die and
the essential 0-classes are exactly the graph components). Persistence pairs
come from standard boundary-matrix reduction over Z/2; `pd0_single_linkage`
is the union-find fast path for dimension 0 and doubles as an independent
oracle for the reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .metrics import DistanceMatrix


class Simplex(NamedTuple):
    vertices: tuple[int, ...]  # sorted, 1..3 entries
    value: float

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


class PersistencePoint(NamedTuple):
    birth: float
    death: float  # may be +inf
    dim: int

    @property
    def persistence(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True)
class Filtration:
    """Simplices sorted by (value, dim, vertex tuple); faces precede cofaces."""

    simplices: tuple[Simplex, ...]
    r_max: float

    def __len__(self):
        return len(self.simplices)


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of finite (birth, death) points plus essential birth values."""

    dim: int
    finite: tuple[tuple[float, float], ...]
    essential: tuple[float, ...]

    @staticmethod
    def make(dim, finite, essential=()) -> "PersistenceDiagram":
        return PersistenceDiagram(
            dim=dim,
            finite=tuple(sorted((float(b), float(d)) for b, d in finite)),
            essential=tuple(sorted(float(b) for b in essential)),
        )

    @property
    def n_points(self) -> int:
        return len(self.finite) + len(self.essential)

    def points(self) -> list[PersistencePoint]:
        pts = [PersistencePoint(b, d, self.dim) for b, d in self.finite]
        pts += [PersistencePoint(b, float("inf"), self.dim) for b in self.essential]
        return pts


class Bar(NamedTuple):
    start: float
    end: float
    dim: int
    open_end: bool


@dataclass(frozen=True)
class Barcode:
    bars: tuple[Bar, ...]


def rips_filtration(d: DistanceMatrix, max_dim: int = 2, r_max: float | str = "diameter") -> Filtration:
    """Vietoris-Rips filtration of a distance matrix, simplices up to `max_dim`.

    Vertices enter at 0, an edge at its pairwise distance, a triangle at the
    max of its three pairwise distances; +inf entries never enter. Numeric
    r_max must be positive; "diameter" resolves to the largest finite entry.
    """
    if r_max == "diameter":
        r_cap = d.diameter()
    else:
        r_cap = float(r_max)
        if r_cap <= 0 or not np.isfinite(r_cap):
            raise ValueError("r_max must be positive and finite")
    if max_dim not in (0, 1, 2):
        raise ValueError("max_dim must be 0, 1, or 2")

    n = d.n
    m = d.values.tolist()  # plain floats are far cheaper in the triple loop
    simplices = [Simplex((i,), 0.0) for i in range(n)]
    if max_dim >= 1:
        for i, j in combinations(range(n), 2):
            v = m[i][j]
            if v <= r_cap:
                simplices.append(Simplex((i, j), v))
    if max_dim >= 2:
        for i, j, k in combinations(range(n), 3):
            v = max(m[i][j], m[i][k], m[j][k])
            if v <= r_cap:
                simplices.append(Simplex((i, j, k), v))

    simplices.sort(key=lambda s: (s.value, len(s.vertices), s.vertices))
    return Filtration(tuple(simplices), r_cap)


def compute_persistence(f: Filtration) -> tuple[PersistenceDiagram, PersistenceDiagram]:
    """Persistence pairing by column reduction of the boundary matrix over Z/2.

    Returns the dimension-0 and dimension-1 diagrams. Zero-persistence pairs
    (birth == death) are discarded; classes alive at r_max are essential.
    """
    simplices = f.simplices
    index = {s.vertices: i for i, s in enumerate(simplices)}

    reduced: list[int] = []  # column bitmasks after reduction
    pivot_of: dict[int, int] = {}  # pivot row -> column holding it
    paired_rows: set[int] = set()
    pairs: list[tuple[int, int]] = []

    for j, s in enumerate(simplices):
        col = 0
        if len(s.vertices) > 1:
            for face in combinations(s.vertices, len(s.vertices) - 1):
                col |= 1 << index[face]
        while col:
            low = col.bit_length() - 1
            other = pivot_of.get(low)
            if other is None:
                break
            col ^= reduced[other]
        reduced.append(col)
        if col:
            low = col.bit_length() - 1
            pivot_of[low] = j
            paired_rows.add(low)
            pairs.append((low, j))

    finite = {0: [], 1: []}
    essential = {0: [], 1: []}
    for i, j in pairs:
        birth_s, death_s = simplices[i], simplices[j]
        if death_s.value > birth_s.value and birth_s.dim in finite:
            finite[birth_s.dim].append((birth_s.value, death_s.value))
    for j, s in enumerate(simplices):
        if reduced[j] == 0 and j not in paired_rows and s.dim in essential:
            essential[s.dim].append(s.value)

    return (
        PersistenceDiagram.make(0, finite[0], essential[0]),
        PersistenceDiagram.make(1, finite[1], essential[1]),
    )


def pd0_single_linkage(d: DistanceMatrix) -> PersistenceDiagram:
    """Dimension-0 Rips persistence via Kruskal on the finite pairwise
    distances: merge heights are the minimum-spanning-forest edge lengths,
    leftover components are essential classes born at 0."""
    n = d.n
    if n == 0:
        return PersistenceDiagram.make(0, [], [])
    ii, jj = np.triu_indices(n, k=1)
    vals = d.values[ii, jj]
    keep = np.isfinite(vals)
    ii, jj, vals = ii[keep], jj[keep], vals[keep]
    order = np.lexsort((jj, ii, vals))

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    deaths = []
    merges = 0
    for idx in order:
        a, b = find(int(ii[idx])), find(int(jj[idx]))
        if a == b:
            continue
        parent[b] = a
        merges += 1
        v = float(vals[idx])
        if v > 0:
            deaths.append(v)
        if merges == n - 1:
            break

    components = n - merges
    return PersistenceDiagram.make(0, [(0.0, v) for v in deaths], [0.0] * components)


def barcode(pd: PersistenceDiagram, r_max: float) -> Barcode:
    """One bar per diagram point; essential classes render as open-ended bars
    truncated at r_max."""
    bars = [Bar(b, d, pd.dim, False) for b, d in pd.finite]
    bars += [Bar(b, float(r_max), pd.dim, True) for b in pd.essential]
    bars.sort(key=lambda bar: (bar.dim, bar.start, bar.end))
    return Barcode(tuple(bars))
